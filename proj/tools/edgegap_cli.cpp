#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "edgegap/error.hpp"
#include "edgegap/fredholm.hpp"
#include "edgegap/hypergeom.hpp"
#include "edgegap/montecarlo.hpp"
#include "edgegap/parallel.hpp"
#include "edgegap/version.hpp"

namespace {

using namespace edgegap;
using json = nlohmann::ordered_json;

constexpr int kExitNumerical = 1;
constexpr int kExitConsistency = 2;
constexpr int kExitUsage = 64;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using Cell = std::variant<double, std::int64_t, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

std::string cell_text(const Cell& c) {
    if (const auto* d = std::get_if<double>(&c)) return format_double(*d);
    if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
    return std::get<std::string>(c);
}

json cell_json(const Cell& c) {
    if (const auto* d = std::get_if<double>(&c)) {
        if (!std::isfinite(*d)) return nullptr;
        return *d;
    }
    if (const auto* i = std::get_if<std::int64_t>(&c)) return *i;
    return std::get<std::string>(c);
}

// "lo:hi:step" (lo included, values below hi + step/2) or "v1,v2,...".
std::vector<double> parse_reals(const std::string& spec) {
    auto to_double = [&](const std::string& tok) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(tok, &used);
        } catch (const std::exception&) {
            throw UsageError("not a number: '" + tok + "' in '" + spec + "'");
        }
        if (used != tok.size() || !std::isfinite(v))
            throw UsageError("not a number: '" + tok + "' in '" + spec + "'");
        return v;
    };
    auto split = [](const std::string& s, char sep) {
        std::vector<std::string> parts;
        std::stringstream ss(s);
        std::string tok;
        while (std::getline(ss, tok, sep)) parts.push_back(tok);
        if (!s.empty() && s.back() == sep) parts.push_back("");
        return parts;
    };
    std::vector<double> out;
    if (spec.find(':') != std::string::npos) {
        const auto parts = split(spec, ':');
        if (parts.size() != 3) throw UsageError("range must be lo:hi:step, got '" + spec + "'");
        const double lo = to_double(parts[0]), hi = to_double(parts[1]), step = to_double(parts[2]);
        if (!(step > 0.0)) throw UsageError("range step must be positive in '" + spec + "'");
        for (long k = 0;; ++k) {
            const double v = lo + k * step;
            if (!(v < hi + step / 2)) break;
            out.push_back(v);
            if (out.size() > 1000000) throw UsageError("range '" + spec + "' is too long");
        }
    } else {
        for (const auto& tok : split(spec, ',')) out.push_back(to_double(tok));
    }
    if (out.empty()) throw UsageError("empty value list '" + spec + "'");
    return out;
}

std::vector<int> parse_ints(const std::string& spec) {
    std::vector<int> out;
    for (double v : parse_reals(spec)) {
        if (v != std::floor(v) || std::abs(v) > 1e9)
            throw UsageError("not an integer: " + format_double(v));
        out.push_back(static_cast<int>(v));
    }
    return out;
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

struct Output {
    std::string format = "csv";
    std::string out_path;
    json config = json::object();
    std::string argv;
    std::optional<std::uint64_t> seed;
};

void emit(const Output& o, const std::string& command, const Table& table, double elapsed) {
    std::ostringstream text;
    json meta = json::object();
    meta["version"] = kVersion;
    meta["command"] = command;
    meta["argv"] = o.argv;
    meta["config"] = o.config;
    meta["wall_clock"] = utc_timestamp();
    meta["elapsed_seconds"] = elapsed;
    if (o.seed) meta["seed"] = *o.seed;

    if (o.format == "json") {
        json rows = json::array();
        for (const auto& r : table.rows) {
            json row = json::object();
            for (std::size_t j = 0; j < r.size(); ++j) row[table.columns[j]] = cell_json(r[j]);
            rows.push_back(std::move(row));
        }
        json doc = json::object();
        doc["meta"] = meta;
        doc["rows"] = rows;
        text << doc.dump(2) << '\n';
    } else {
        for (const auto& [key, value] : meta.items())
            text << "# " << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump())
                 << '\n';
        for (std::size_t j = 0; j < table.columns.size(); ++j)
            text << (j ? "," : "") << csv_field(table.columns[j]);
        text << '\n';
        for (const auto& r : table.rows) {
            for (std::size_t j = 0; j < r.size(); ++j)
                text << (j ? "," : "") << csv_field(cell_text(r[j]));
            text << '\n';
        }
    }
    if (o.out_path.empty()) {
        std::cout << text.str();
    } else {
        std::ofstream f(o.out_path, std::ios::binary);
        if (!f) throw UsageError("cannot open output file '" + o.out_path + "'");
        f << text.str();
    }
}

double sigmas(double mc, double se, double exact) {
    const double diff = std::abs(mc - exact);
    if (se > 0.0) return diff / se;
    return diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
}

// Exact Pr(L <= l) for the Poissonized shapes at process intensity t.
double lis_exact(Shape shape, double t, int l, int m) {
    const double s = 4.0 * t;
    switch (shape) {
    case Shape::Square: return e2_hard(s, l, m).value;
    case Shape::AntiDiagonal: return e1_hard(s, l / 2, m).value;  // the chain length is even
    case Shape::Diagonal: return l == 0 ? hard_gap_hyper(4, s, 0).value : e4_hard(s, l - 1, m).value;
    }
    return 0.0;
}

Eigen::MatrixXcd haar_residual_matrix(Group g, int n, const Eigen::MatrixXcd& u) {
    if (g == Group::Symplectic) {
        const Eigen::MatrixXcd j = symplectic_form(n);
        return u.transpose() * j * u - j;
    }
    return u.adjoint() * u - Eigen::MatrixXcd::Identity(u.rows(), u.cols());
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hard- and soft-edge gap probabilities, LIS and Haar averages"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", kVersion);

    Output out;
    app.add_option("--format", out.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    app.add_option("--out", out.out_path, "Write output to this file instead of stdout");

    // hard-gap
    int hg_beta = 2, hg_a = 0, hg_m = kHardEdgeNodes;
    std::string hg_s, hg_method = "both";
    double hg_tol = 1e-6, hg_rel_tol = 1e-14;
    auto* hard = app.add_subcommand("hard-gap", "Hard-edge gap probability E_beta(s; a)");
    hard->add_option("--beta", hg_beta)->required()->check(CLI::IsMember({1, 2, 4}));
    hard->add_option("--s", hg_s, "Value, comma list or lo:hi:step")->required();
    hard->add_option("--a", hg_a, "Index (beta 1: half index; beta 4: even index >= 2)")
        ->capture_default_str();
    hard->add_option("--method", hg_method)
        ->check(CLI::IsMember({"det", "hyper", "both"}))
        ->capture_default_str();
    hard->add_option("--m", hg_m, "Quadrature nodes")->check(CLI::Range(2, 2000))->capture_default_str();
    hard->add_option("--check-tol", hg_tol)->capture_default_str();
    hard->add_option("--rel-tol", hg_rel_tol, "Series tolerance")->capture_default_str();

    // soft-gap
    int sg_beta = 2, sg_m = kSoftEdgeNodes;
    std::string sg_s;
    auto* soft = app.add_subcommand("soft-gap", "Soft-edge distribution F_beta(s)");
    soft->add_option("--beta", sg_beta)->required()->check(CLI::IsMember({1, 2, 4}));
    soft->add_option("--s", sg_s)->required();
    soft->add_option("--m", sg_m)->check(CLI::Range(2, 2000))->capture_default_str();

    // transition
    int tr_beta = 2, tr_m = kHardEdgeNodes;
    std::string tr_s, tr_a;
    auto* trans = app.add_subcommand("transition", "Hard-to-soft edge transition table");
    trans->add_option("--beta", tr_beta)->required()->check(CLI::IsMember({1, 2}));
    trans->add_option("--s", tr_s)->required();
    trans->add_option("--a", tr_a, "Comma list of orders")->required();
    trans->add_option("--m", tr_m)->check(CLI::Range(2, 2000))->capture_default_str();

    // lis
    std::string lis_shape;
    double lis_t = 1.0;
    int lis_l = 1, lis_m = kHardEdgeNodes;
    std::int64_t lis_trials = 100000;
    std::uint64_t lis_seed = 1;
    auto* lis_cmd = app.add_subcommand("lis", "Poissonized longest chain: Monte Carlo vs exact");
    lis_cmd->add_option("--shape", lis_shape)
        ->required()
        ->check(CLI::IsMember({"square", "antidiag", "diag"}));
    lis_cmd->add_option("--t", lis_t)->required();
    lis_cmd->add_option("--l", lis_l)->required();
    lis_cmd->add_option("--trials", lis_trials)->capture_default_str();
    lis_cmd->add_option("--seed", lis_seed)->capture_default_str();
    lis_cmd->add_option("--m", lis_m)->check(CLI::Range(2, 2000))->capture_default_str();

    // group-average
    std::string ga_group;
    int ga_n = 1;
    double ga_t = 0.5;
    std::int64_t ga_trials = 100000;
    std::uint64_t ga_seed = 1;
    bool ga_structure = false;
    auto* group = app.add_subcommand("group-average", "Haar average vs hypergeometric series");
    group->add_option("--group", ga_group)->required()->check(CLI::IsMember({"u", "o", "sp"}));
    group->add_option("--n", ga_n)->required();
    group->add_option("--t", ga_t)->required();
    group->add_option("--trials", ga_trials)->capture_default_str();
    group->add_option("--seed", ga_seed)->capture_default_str();
    group->add_flag("--structure-check", ga_structure,
                    "Add the defining-relation residual of one Haar sample");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    for (int i = 0; i < argc; ++i) out.argv += (i ? " " : "") + std::string(argv[i]);

    const auto start = std::chrono::steady_clock::now();
    Table table;
    std::string command;
    bool consistency_failed = false;

    try {
        if (*hard) {
            command = "hard-gap";
            const auto s_values = parse_reals(hg_s);
            out.config = {{"beta", hg_beta}, {"s", hg_s},   {"a", hg_a},
                          {"method", hg_method}, {"m", hg_m}, {"check_tol", hg_tol},
                          {"rel_tol", hg_rel_tol}};
            const bool det = hg_method != "hyper", hyper = hg_method != "det";
            if (hg_beta == 4 && det && hg_a < 1)
                throw DomainError("hard-gap: the beta=4 determinant route needs a >= 1");
            std::vector<double> det_v(s_values.size()), hyp_v(s_values.size());
            parallel_for(static_cast<int>(s_values.size()), [&](int i) {
                const double s = s_values[i];
                if (hyper) hyp_v[i] = hard_gap_hyper(hg_beta, s, hg_a, hg_rel_tol).value;
                if (det) {
                    switch (hg_beta) {
                    case 1: det_v[i] = e1_hard(s, hg_a, hg_m).value; break;
                    case 2: det_v[i] = e2_hard(s, hg_a, hg_m).value; break;
                    default: det_v[i] = e4_hard(s, hg_a - 1, hg_m).value; break;
                    }
                }
            });
            table.columns = {"s", "value"};
            if (det && hyper) table.columns.insert(table.columns.end(), {"alt_value", "discrepancy"});
            for (std::size_t i = 0; i < s_values.size(); ++i) {
                std::vector<Cell> row{s_values[i], det ? det_v[i] : hyp_v[i]};
                if (det && hyper) {
                    const double d = std::abs(det_v[i] - hyp_v[i]);
                    row.insert(row.end(), {hyp_v[i], d});
                    if (!(d <= hg_tol)) consistency_failed = true;
                }
                table.rows.push_back(std::move(row));
            }
        } else if (*soft) {
            command = "soft-gap";
            const auto s_values = parse_reals(sg_s);
            out.config = {{"beta", sg_beta}, {"s", sg_s}, {"m", sg_m}};
            std::vector<GapValue> v(s_values.size());
            parallel_for(static_cast<int>(s_values.size()), [&](int i) {
                v[i] = sg_beta == 1 ? f1(s_values[i], sg_m)
                       : sg_beta == 2 ? f2(s_values[i], sg_m)
                                      : f4(s_values[i], sg_m);
            });
            table.columns = {"s", "value", "err_estimate"};
            for (std::size_t i = 0; i < s_values.size(); ++i)
                table.rows.push_back({s_values[i], v[i].value, v[i].err_estimate});
        } else if (*trans) {
            command = "transition";
            const auto s_values = parse_reals(tr_s);
            const auto a_values = parse_ints(tr_a);
            out.config = {{"beta", tr_beta}, {"s", tr_s}, {"a", tr_a}, {"m", tr_m}};
            const auto rows = transition_sweep(tr_beta, s_values, a_values, tr_m);
            table.columns = {"a", "s", "hard", "soft", "error"};
            for (const auto& r : rows)
                table.rows.push_back(
                    {std::int64_t{r.a}, r.s, r.hard_value, r.soft_value, r.abs_error});
        } else if (*lis_cmd) {
            command = "lis";
            out.config = {{"shape", lis_shape}, {"t", lis_t},       {"l", lis_l},
                          {"trials", lis_trials}, {"seed", lis_seed}, {"m", lis_m}};
            out.seed = lis_seed;
            if (lis_trials < 1) throw UsageError("lis: --trials must be positive");
            const Shape shape = lis_shape == "square"     ? Shape::Square
                                : lis_shape == "antidiag" ? Shape::AntiDiagonal
                                                          : Shape::Diagonal;
            const McEstimate mc = poissonized_lis_cdf(shape, lis_t, lis_l, lis_trials, {lis_seed});
            const double exact = lis_exact(shape, lis_t, lis_l, lis_m);
            table.columns = {"shape", "t", "l", "trials", "seed", "mc_mean", "std_err",
                             "exact_value", "sigmas"};
            table.rows.push_back({lis_shape, lis_t, std::int64_t{lis_l}, mc.trials,
                                  std::to_string(lis_seed), mc.mean, mc.std_error, exact,
                                  sigmas(mc.mean, mc.std_error, exact)});
        } else if (*group) {
            command = "group-average";
            out.config = {{"group", ga_group},   {"n", ga_n},        {"t", ga_t},
                          {"trials", ga_trials}, {"seed", ga_seed}, {"structure_check", ga_structure}};
            out.seed = ga_seed;
            if (ga_trials < 1) throw UsageError("group-average: --trials must be positive");
            if (ga_n < 1) throw UsageError("group-average: --n must be positive");
            const Group g = ga_group == "u" ? Group::Unitary
                            : ga_group == "o" ? Group::Orthogonal
                                              : Group::Symplectic;
            const McEstimate mc = group_average(g, ga_n, ga_t, ga_trials, {ga_seed});
            const double series = group_average_series(g, ga_n, ga_t);
            table.columns = {"group", "n", "t", "trials", "seed", "mc_mean", "std_err",
                             "series_value", "sigmas"};
            std::vector<Cell> row{ga_group, std::int64_t{ga_n}, ga_t, mc.trials,
                                  std::to_string(ga_seed), mc.mean, mc.std_error, series,
                                  sigmas(mc.mean, mc.std_error, series)};
            if (ga_structure) {
                // An independent stream past every chunk index the estimate could use.
                Rng rng = make_stream({ga_seed}, std::numeric_limits<std::uint64_t>::max() - 1);
                const auto u = haar_sample(g, ga_n, rng);
                table.columns.push_back(g == Group::Symplectic ? "symplectic_residual"
                                                               : "orthogonality_residual");
                row.push_back(haar_residual_matrix(g, ga_n, u).cwiseAbs().maxCoeff());
            }
            table.rows.push_back(std::move(row));
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        emit(out, command, table, elapsed);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DomainError& e) {
        std::cerr << "DomainError: " << e.what() << '\n';
        return kExitUsage;
    } catch (const SizeLimit& e) {
        std::cerr << "SizeLimit: " << e.what() << '\n';
        return kExitUsage;
    } catch (const NonConvergence& e) {
        std::cerr << "NonConvergence: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const NegativeDeterminant& e) {
        std::cerr << "NegativeDeterminant: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const Error& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return kExitNumerical;
    }
    if (consistency_failed) {
        std::cerr << "consistency check failed: discrepancy above --check-tol " << format_double(hg_tol)
                  << '\n';
        return kExitConsistency;
    }
    return 0;
}

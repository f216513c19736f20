#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "vdck/boxcount.hpp"
#include "vdck/digital.hpp"
#include "vdck/discrepancy.hpp"
#include "vdck/errors.hpp"
#include "vdck/hankel.hpp"
#include "vdck/laurent.hpp"

namespace fs = std::filesystem;
using namespace vdck;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitBudget = 3;
constexpr int kExitFalsified = 4;

struct Options {
    uint32_t p = 3;
    std::string theta = "paperfolding";
    int horizon = -1; // -1: pick the default for the theta source
    int depth = -1;   // -1: m + 12
    unsigned r_max = 512;
    unsigned max_quotients = 100000;
    unsigned m_max = 20;
    unsigned k_max = 7;
    uint64_t n_points = 81;
    unsigned m = 0;
    int t = -1;
    int d = -1;
    int deficiency = -1;
    bool net = false;
    bool digits = false;
    std::string mode = "zero-shortcut";
    std::string out = ".";
    std::string format = "text";
    uint64_t seed = 0x1d872fca4492bf1bULL;
    unsigned threads = 0;
};

// Ordered key/value report, rendered as "key: value" lines or a flat JSON
// object. Repeated keys become arrays in JSON.
class Report {
public:
    void add(const std::string& key, const std::string& value) { kv_.emplace_back(key, value); }
    template <typename T>
    void add_num(const std::string& key, const T& value) {
        std::ostringstream os;
        os << value;
        kv_.emplace_back(key, os.str());
    }

    std::string text() const {
        std::ostringstream os;
        for (const auto& [k, v] : kv_) os << k << ": " << v << "\n";
        return os.str();
    }

    std::string json() const {
        nlohmann::ordered_json j;
        for (const auto& [k, v] : kv_) {
            if (j.contains(k)) {
                if (!j[k].is_array()) j[k] = nlohmann::ordered_json::array({j[k]});
                j[k].push_back(v);
            } else {
                j[k] = v;
            }
        }
        return j.dump(2) + "\n";
    }

    std::string render(const std::string& format) const {
        return format == "json" ? json() : text();
    }

private:
    std::vector<std::pair<std::string, std::string>> kv_;
};

void embed_config(Report& rep, const Options& opt) {
    rep.add_num("config.p", opt.p);
    rep.add("config.theta", opt.theta);
    rep.add_num("config.horizon", opt.horizon);
    rep.add_num("config.seed", opt.seed);
    rep.add_num("config.threads", opt.threads);
}

LaurentSeries resolve_theta(const Options& opt, int min_horizon) {
    int horizon = opt.horizon;
    if (opt.theta == "paperfolding") {
        if (opt.p != 3) throw ConfigError("paperfolding theta lives over F_3; use --p 3");
        if (horizon < 0) horizon = 4096;
        if (horizon < min_horizon) horizon = min_horizon;
        return paperfolding_theta(horizon);
    }
    if (opt.theta.rfind("rational:", 0) == 0) {
        std::string body = opt.theta.substr(9);
        // P,/,Q with polynomial text on both sides of the ",/,"
        size_t sep = body.find(",/,");
        if (sep == std::string::npos)
            throw ConfigError("rational theta must look like rational:P,/,Q");
        Fp fp(opt.p);
        Poly num = Poly::parse(fp, body.substr(0, sep));
        Poly den = Poly::parse(fp, body.substr(sep + 3));
        if (horizon < 0) horizon = 256;
        if (horizon < min_horizon) horizon = min_horizon;
        return from_rational(num, den, horizon);
    }
    if (opt.theta.rfind("file:", 0) == 0) {
        std::ifstream in(opt.theta.substr(5));
        if (!in) throw ConfigError("cannot open theta file " + opt.theta.substr(5));
        std::stringstream buf;
        buf << in.rdbuf();
        LaurentSeries s = parse_series(buf.str());
        if (s.field().modulus() != opt.p)
            throw ConfigError("theta file modulus disagrees with --p");
        if (s.horizon() < min_horizon)
            throw HorizonError("theta file has too few coefficients for this command");
        return s;
    }
    throw ConfigError("unknown theta source '" + opt.theta + "'");
}

NetSpec ihj_net(const LaurentSeries& theta, unsigned m, unsigned depth) {
    return NetSpec(theta.field(), m,
                   {GeneratorMatrix::unit_i(), GeneratorMatrix::hankel_of(theta),
                    GeneratorMatrix::anti_diag_j()},
                   depth);
}

void write_file(const Options& opt, const std::string& name, const std::string& content) {
    fs::create_directories(opt.out);
    fs::path path = fs::path(opt.out) / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write " + path.string());
    out << content;
    std::cout << "wrote " << path.string() << "\n";
}

std::string digits_field(const std::vector<uint32_t>& digits) {
    std::ostringstream os;
    for (size_t i = 0; i < digits.size(); ++i) {
        if (i) os << ";";
        os << digits[i];
    }
    return os.str();
}

std::string rational_field(const BigRational& r) {
    return boost::multiprecision::numerator(r).str() + "/" +
           boost::multiprecision::denominator(r).str();
}

unsigned digits_needed(uint64_t n, uint32_t p) {
    unsigned d = 1;
    while (n >= p) {
        n /= p;
        ++d;
    }
    return d;
}

int cmd_gen(const Options& opt) {
    const uint32_t p = opt.p;
    if (opt.net && opt.m == 0) throw ConfigError("--net requires --m");
    unsigned m = opt.net ? opt.m : (opt.n_points == 0 ? 1 : digits_needed(opt.n_points - 1, p));
    unsigned depth = opt.depth > 0 ? unsigned(opt.depth) : m + 12;
    if (depth < m) throw ConfigError("--depth must be at least m");

    std::ostringstream csv;
    csv << (opt.net ? "n,x1,x2,x3" : "n,x1,x2");
    if (opt.digits) csv << (opt.net ? ",x1_digits,x2_digits,x3_digits" : ",x1_digits,x2_digits");
    csv << "\n";

    if (opt.n_points > 0) {
        LaurentSeries theta = resolve_theta(opt, int(depth + m + 1));
        if (opt.net) {
            NetSpec net = ihj_net(theta, m, depth);
            if (BigInt(opt.n_points) > net.point_count())
                throw ConfigError("--N exceeds p^m for the requested net");
            for (uint64_t n = 0; n < opt.n_points; ++n) {
                DigitalPoint pt = digital_point(net, BigInt(n));
                csv << n;
                for (int i = 0; i < 3; ++i) csv << "," << rational_field(pt.coords[i].value);
                if (opt.digits)
                    for (int i = 0; i < 3; ++i) csv << "," << digits_field(pt.coords[i].digits);
                csv << "\n";
            }
        } else {
            for (uint64_t n = 0; n < opt.n_points; ++n) {
                BigRational x1 = radical_inverse(p, n);
                std::vector<uint32_t> d2 = kronecker_digits(theta, n, depth);
                BigInt num2 = 0;
                for (uint32_t d : d2) {
                    num2 *= p;
                    num2 += d;
                }
                csv << n << "," << rational_field(x1) << ","
                    << rational_field(BigRational(num2, bigint_pow(p, depth)));
                if (opt.digits) {
                    std::vector<uint32_t> d1(depth, 0);
                    uint64_t v = n;
                    for (size_t i = 0; i < depth && v; ++i, v /= p) d1[i] = uint32_t(v % p);
                    csv << "," << digits_field(d1) << "," << digits_field(d2);
                }
                csv << "\n";
            }
        }
    }
    write_file(opt, "points.csv", csv.str());
    return kExitOk;
}

int cmd_verify(const Options& opt, const std::string& which) {
    Report rep;
    embed_config(rep, opt);
    rep.add("check", which);
    bool pass = true;

    if (which == "deficiency") {
        LaurentSeries theta = resolve_theta(opt, 64);
        DeficiencyReport d = deficiency_scan(theta, opt.r_max, opt.max_quotients, opt.threads);
        rep.add_num("d_hat", d.d_hat);
        rep.add_num("max_certified_degree", d.max_certified_degree);
        rep.add_num("scanned_r", d.scanned_r);
        rep.add_num("horizon", d.horizon);
        rep.add_num("quotients_checked", d.quotients_checked);
        if (d.rational_collapse_r) {
            pass = false;
            rep.add_num("rational_collapse_r", *d.rational_collapse_r);
            rep.add("diagnostic",
                    "theta is rational within the scanned range; deficiency is undefined");
        }
        for (const auto& w : d.witnesses)
            rep.add("witness", "r=" + std::to_string(w.r) + " h=" + std::to_string(w.h) +
                                   " deg=" + std::to_string(w.deg));
    } else if (which == "tvalue") {
        LaurentSeries theta = resolve_theta(opt, int(2 * opt.m_max + 2));
        unsigned t;
        if (opt.t >= 0) {
            t = unsigned(opt.t);
        } else {
            DeficiencyReport d = deficiency_scan(theta, opt.r_max, opt.max_quotients, opt.threads);
            t = unsigned(d.d_hat);
            rep.add_num("d_hat_from_scan", d.d_hat);
        }
        rep.add_num("t", t);
        std::vector<unsigned> ms;
        for (unsigned m = 1; m <= opt.m_max; ++m) ms.push_back(m);
        auto checks = sequence_t_check(GeneratorMatrix::unit_i(),
                                       GeneratorMatrix::hankel_of(theta), theta.field(), ms, t);
        for (const auto& c : checks) {
            std::string line = "m=" + std::to_string(c.m) + " " + (c.ok ? "ok" : "FAIL");
            if (!c.ok && c.failing)
                line += " at d1=" + std::to_string(c.failing->first) +
                        " d2=" + std::to_string(c.failing->second);
            rep.add("m_check", line);
            pass = pass && c.ok;
        }
    } else if (which == "admissible") {
        unsigned m = opt.m ? opt.m : 6;
        int dval = opt.d;
        LaurentSeries theta = resolve_theta(opt, int(3 * m + 32));
        if (dval < 0) {
            DeficiencyReport d = deficiency_scan(theta, opt.r_max, opt.max_quotients, opt.threads);
            dval = d.d_hat + 3;
            rep.add_num("d_hat_from_scan", d.d_hat);
        }
        unsigned depth = opt.depth > 0 ? unsigned(opt.depth) : m + unsigned(dval) + 8;
        NetSpec net = ihj_net(theta, m, depth);
        AdmissibilityMode mode = opt.mode == "exhaustive" ? AdmissibilityMode::Exhaustive
                                                          : AdmissibilityMode::ZeroShortcut;
        AdmissibilityResult res = admissibility_check(net, unsigned(dval), mode);
        rep.add_num("m", m);
        rep.add_num("d", dval);
        rep.add("mode", opt.mode);
        rep.add("admissible", res.admissible ? "true" : "false");
        if (!res.admissible) {
            pass = false;
            rep.add("witness",
                    "k=" + std::to_string(res.witness->first) + " n=" + std::to_string(res.witness->second));
            rep.add("witness_l", res.witness_l ? std::to_string(*res.witness_l) : "infinity");
        }
    } else if (which == "hankel") {
        LaurentSeries theta = resolve_theta(opt, int(2 * opt.m_max + 2));
        std::set<size_t> regular = regular_sizes(theta, opt.m_max);
        CFExpansion cf = continued_fraction(theta, opt.max_quotients);
        std::set<size_t> expected;
        for (size_t h = 0; h < cf.certified_count(); ++h)
            if (cf.degrees[h] <= int(opt.m_max)) expected.insert(size_t(cf.degrees[h]));
        auto joined = [](const std::set<size_t>& s) {
            std::ostringstream os;
            for (size_t v : s) os << v << " ";
            std::string out = os.str();
            if (!out.empty()) out.pop_back();
            return out;
        };
        rep.add("regular_sizes", joined(regular));
        rep.add("convergent_degrees", joined(expected));
        pass = regular == expected;
    } else if (which == "correspondence") {
        const unsigned depth = opt.depth > 0 ? unsigned(opt.depth) : 26;
        LaurentSeries theta = resolve_theta(opt, int(depth + 21));
        const uint32_t p = opt.p;
        NetSpec seq(theta.field(), 20,
                    {GeneratorMatrix::unit_i(), GeneratorMatrix::hankel_of(theta)}, depth);
        uint64_t checked = 0, mismatches = 0;
        uint64_t small = 1;
        for (int i = 0; i < 6; ++i) small *= p;
        auto check_n = [&](uint64_t n) {
            DigitalPoint pt = digital_point(seq, BigInt(n));
            bool ok = pt.coords[0].value == radical_inverse(p, n) &&
                      pt.coords[1].digits == kronecker_digits(theta, n, depth);
            ++checked;
            if (!ok) ++mismatches;
        };
        for (uint64_t n = 0; n < small; ++n) check_n(n);
        std::mt19937_64 rng(opt.seed);
        uint64_t limit = 1;
        for (int i = 0; i < 20; ++i) limit *= p;
        for (int i = 0; i < 10000; ++i) check_n(rng() % limit);
        rep.add_num("checked", checked);
        rep.add_num("mismatches", mismatches);
        pass = mismatches == 0;
    } else {
        throw ConfigError("unknown verify target '" + which + "'");
    }

    rep.add("result", pass ? "PASS" : "FAIL");
    std::cout << rep.render(opt.format);
    return pass ? kExitOk : kExitFalsified;
}

int cmd_lowerbound(const Options& opt) {
    const unsigned m = opt.m;
    if (m == 0) throw ConfigError("lowerbound requires --m");
    LaurentSeries theta = resolve_theta(opt, int(2 * m + 8));

    Report rep;
    embed_config(rep, opt);

    unsigned D;
    if (opt.deficiency >= 0) {
        D = unsigned(opt.deficiency);
        rep.add_num("deficiency_assumed", D);
    } else {
        DeficiencyReport d = deficiency_scan(theta, opt.r_max, opt.max_quotients, opt.threads);
        if (d.rational_collapse_r) throw FalsificationError("theta is rational; no deficiency");
        D = unsigned(d.d_hat);
        rep.add_num("deficiency_scanned", D);
        rep.add("deficiency_note", "scanned value over r <= " + std::to_string(d.scanned_r) +
                                       "; treated as D(theta) for parameter choices");
    }
    const unsigned v = 3 * (D + 1);
    if (m % (8 * v) != 0 || m / (4 * v) < 2)
        throw ConfigError("m must be a multiple of 8v with m/(4v) >= 2, v = 3(D+1) = " +
                          std::to_string(v));

    unsigned u = choose_u(theta, m, D);
    GammaSpec g = build_gamma(m, v, u);
    unsigned depth = opt.depth > 0 ? unsigned(opt.depth) : m + D + 8;
    NetSpec net = ihj_net(theta, m, depth);
    NbarSolution nb = solve_nbar(net, g);
    DeficitReport dr = deficit(net, nb.filled, D, opt.threads);

    rep.add_num("m", m);
    rep.add_num("v", v);
    rep.add_num("u", u);
    rep.add_num("interval_count", dr.interval_count);
    rep.add("lambda_j", rational_str(dr.lambda_j));
    rep.add("deficit", rational_str(dr.deficit));
    rep.add("deficit_negative", dr.deficit < 0 ? "true" : "false");
    rep.add_num("triples_at_min_order", dr.triples_at_min_order);
    rep.add_num("min_order_triples_enumerated", dr.min_order_triples_enumerated);
    for (const auto& [order, cnt] : dr.empty_interval_orders)
        rep.add("empty_intervals_at_order_" + std::to_string(order), std::to_string(cnt));

    std::string base = "lowerbound_m" + std::to_string(m);
    write_file(opt, base + ".report.txt", rep.render(opt.format));
    write_file(opt, base + "_intervals.csv", dr.rows_csv());
    std::cout << rep.render(opt.format);
    return kExitOk;
}

int cmd_growth(const Options& opt) {
    LaurentSeries theta = resolve_theta(opt, int(2 * opt.k_max + 14));
    unsigned margin = opt.depth > 0 ? unsigned(opt.depth) : 12;
    GrowthResult g = growth_sweep(theta, opt.k_max, margin);

    Report rep;
    embed_config(rep, opt);
    rep.add_num("k_max", opt.k_max);
    write_file(opt, "growth.csv", g.rows_csv());
    write_file(opt, "growth_fit.txt", rep.render("text") + g.fit_text());
    std::cout << g.fit_text();
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"construct and verify van der Corput-Kronecker-type low-discrepancy "
                 "sequences over F_p"};
    app.require_subcommand(1);

    Options opt;
    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--p", opt.p, "prime modulus");
        cmd->add_option("--theta", opt.theta, "paperfolding | rational:P,/,Q | file:PATH");
        cmd->add_option("--horizon", opt.horizon, "series horizon K");
        cmd->add_option("--depth", opt.depth, "digit depth R");
        cmd->add_option("--out", opt.out, "output directory");
        cmd->add_option("--format", opt.format, "text | json")
            ->check(CLI::IsMember({"text", "json"}));
        cmd->add_option("--seed", opt.seed, "seed for randomized checks");
        cmd->add_option("--threads", opt.threads, "worker threads (0 = auto)");
    };

    CLI::App* gen = app.add_subcommand("gen", "generate points as CSV");
    gen->add_option("--N", opt.n_points, "number of points");
    gen->add_flag("--net", opt.net, "emit the 3-dimensional net instead of the sequence");
    gen->add_option("--m", opt.m, "net parameter m (with --net)");
    gen->add_flag("--digits", opt.digits, "include digit-string columns");
    add_common(gen);

    CLI::App* verify = app.add_subcommand("verify", "verify a structural property");
    std::string which;
    verify->add_option("which", which, "deficiency | tvalue | admissible | hankel | correspondence")
        ->required()
        ->check(CLI::IsMember({"deficiency", "tvalue", "admissible", "hankel", "correspondence"}));
    verify->add_option("--r-max", opt.r_max, "shift range for deficiency scans");
    verify->add_option("--max-quotients", opt.max_quotients, "cap on quotients per shift");
    verify->add_option("--m-max", opt.m_max, "largest m for rank checks");
    verify->add_option("--m", opt.m, "net parameter m");
    verify->add_option("--t", opt.t, "quality parameter t");
    verify->add_option("--d", opt.d, "admissibility parameter d");
    verify->add_option("--mode", opt.mode, "zero-shortcut | exhaustive")
        ->check(CLI::IsMember({"zero-shortcut", "exhaustive"}));
    add_common(verify);

    CLI::App* lower = app.add_subcommand("lowerbound", "structural discrepancy deficit");
    lower->add_option("--m", opt.m, "net parameter m (multiple of 8v)")->required();
    lower->add_option("--D", opt.deficiency, "assume this deficiency instead of scanning");
    lower->add_option("--r-max", opt.r_max, "shift range for the deficiency scan");
    lower->add_option("--max-quotients", opt.max_quotients, "cap on quotients per shift");
    add_common(lower);

    CLI::App* growth = app.add_subcommand("growth", "exact N*D_N^* growth table");
    growth->add_option("--k-max", opt.k_max, "largest k for N = p^k");
    add_common(growth);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (!Fp::is_prime(opt.p))
            throw ConfigError("--p must be a prime in [2, 2^16), got " + std::to_string(opt.p));
        if (gen->parsed()) return cmd_gen(opt);
        if (verify->parsed()) return cmd_verify(opt, which);
        if (lower->parsed()) return cmd_lowerbound(opt);
        if (growth->parsed()) return cmd_growth(opt);
        return kExitConfig;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const BudgetError& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return kExitBudget;
    } catch (const HorizonError& e) {
        std::cerr << "horizon exhausted: " << e.what() << "\n";
        return kExitBudget;
    } catch (const FalsificationError& e) {
        std::cerr << "falsification: " << e.what() << "\n";
        return kExitFalsified;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

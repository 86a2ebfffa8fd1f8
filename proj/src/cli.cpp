#include "fint/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "fint/first_integral.hpp"
#include "fint/flow.hpp"
#include "fint/io.hpp"
#include "fint/singular_curve.hpp"
#include "fint/small_divisor.hpp"

namespace fint::cli {
namespace {

const char* kUsage =
    "usage: fint <command> [file] [flags]\n"
    "commands:\n"
    "  resonance           resonance lattice of the eigenvalue list\n"
    "  curve               singular curve y = phi(x1) through the origin\n"
    "  check-nonisolated   is the singular point on a curve of equilibria\n"
    "  straighten          move the singular curve onto the v = 0 axis\n"
    "  integral            formal first integral (straightens on demand)\n"
    "  nonint              trivial-kernel certificate for nonzero spectra\n"
    "  counterexample      the Liouville-eigenvalue instance, constructed\n"
    "  certify-divergence  root-norm growth certificate along the schedule\n"
    "  verify              numerical conservation shadow of the integral\n"
    "flags: --degree N --cap C --kmax K --threads T --precision BITS "
    "--out FILE\n";

struct Options {
    std::string command;
    std::string file;
    std::string out;
    int degree = 0;  // 0: defer to the file's options
    int cap = 0;
    int kmax = 3;
    int threads = 0;
    int precision = 0;
};

int flag_int(const std::string& flag, const std::string& v) {
    if (v.empty()) throw ParseError("flag " + flag + " needs a value");
    std::size_t i = v[0] == '-' ? 1 : 0;
    for (; i < v.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(v[i])))
            throw ParseError("flag " + flag + " needs an integer, got '" + v +
                             "'");
    try {
        return std::stoi(v);
    } catch (const std::exception&) {
        throw ParseError("flag " + flag + " value out of range");
    }
}

Options parse_args(const std::vector<std::string>& args) {
    Options o;
    for (std::size_t i = 0; i < args.size(); ++i) {
        const std::string& a = args[i];
        if (a.rfind("--", 0) == 0) {
            std::string flag = a, value;
            auto eq = a.find('=');
            bool have = false;
            if (eq != std::string::npos) {
                flag = a.substr(0, eq);
                value = a.substr(eq + 1);
                have = true;
            } else if (i + 1 < args.size()) {
                value = args[++i];
                have = true;
            }
            if (!have) throw ParseError("flag " + flag + " needs a value");
            if (flag == "--degree")
                o.degree = flag_int(flag, value);
            else if (flag == "--cap")
                o.cap = flag_int(flag, value);
            else if (flag == "--kmax")
                o.kmax = flag_int(flag, value);
            else if (flag == "--threads")
                o.threads = flag_int(flag, value);
            else if (flag == "--precision")
                o.precision = flag_int(flag, value);
            else if (flag == "--out")
                o.out = value;
            else
                throw ParseError("unknown flag " + flag);
        } else if (o.command.empty()) {
            o.command = a;
        } else if (o.file.empty()) {
            o.file = a;
        } else {
            throw ParseError("unexpected argument '" + a + "'");
        }
    }
    if (o.command.empty()) throw ParseError("no command given");
    if (o.degree < 0 || o.cap < 0)
        throw ParseError("degree and cap must be positive");
    if (o.precision != 0 && o.precision < 64)
        throw ParseError("precision must be at least 64 bits");
    return o;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spill(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path + "'");
    out << text;
}

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

struct Loaded {
    SystemFile sf;
    std::string backend;
    std::string digest;
};

Loaded load(const Options& o) {
    if (o.file.empty())
        throw ParseError("command '" + o.command + "' needs a system file");
    std::string text = slurp(o.file);
    Loaded l{parse_system(text), "", digest_hex(text)};
    l.backend = chosen_backend(l.sf);
    return l;
}

int effective_degree(const Options& o, const SystemFile& sf) {
    return o.degree > 0 ? o.degree : sf.trunc;
}

// The --degree flag fixes the pipeline's working truncation; the field is
// rebuilt at that order so every stage agrees on it.
SystemFile at_degree(const SystemFile& sf, int N) {
    SystemFile work = sf;
    work.trunc = N;
    return work;
}

int effective_precision(const Options& o, const SystemFile* sf) {
    if (o.precision > 0) return o.precision;
    return sf ? sf->precision : 256;
}

template <class K>
std::vector<K> lambda_vector(const SystemFile& sf);

template <>
std::vector<Rational> lambda_vector(const SystemFile& sf) {
    std::vector<Rational> out;
    for (const auto& ev : sf.lambda) {
        if (ev.is_zeta())
            throw Error("certified eigenvalue needs the ball backend");
        out.push_back(ev.value);
    }
    return out;
}

template <>
std::vector<Ball> lambda_vector(const SystemFile& sf) {
    std::vector<Ball> out;
    for (const auto& ev : sf.lambda) {
        if (!ev.is_zeta()) {
            out.push_back(Ball::from_rational(ev.value));
            continue;
        }
        Ball z = liouville_zeta(ev.zeta_k).ball();
        out.push_back(ev.zeta_sign < 0 ? -z : z);
    }
    return out;
}

// Lattice membership over balls: only an exact zero certifies membership;
// an undecided sign aborts rather than guessing.
std::vector<Exponent> lattice_ball(const std::vector<Ball>& lambda, int cap) {
    std::vector<Exponent> out;
    for (int d = 1; d <= cap; ++d)
        for (const auto& m : exponents_of_degree(lambda.size(), d)) {
            Sign s = ScalarOps<Ball>::sign(dot(lambda, m));
            if (s == Sign::undecided)
                throw PrecisionExhausted("lattice membership undecided at " +
                                         m.str());
            if (s == Sign::zero) out.push_back(m);
        }
    return out;
}

SystemFile to_system(const VectorField<Rational>& vf, const SystemFile& base) {
    SystemFile out = base;
    out.trunc = vf.trunc();
    out.f.assign(static_cast<std::size_t>(vf.n), {});
    for (int i = 0; i < vf.n; ++i)
        for (int d = 0; d <= vf.trunc(); ++d)
            for (const auto& [ex, c] :
                 vf.f[static_cast<std::size_t>(i)].part(d).terms)
                out.f[static_cast<std::size_t>(i)].push_back({c, ex});
    return out;
}

int cmd_resonance(const Options& o, Report& rep) {
    Loaded l = load(o);
    rep.input_digest = l.digest;
    PrecisionScope scope(effective_precision(o, &l.sf));
    int cap = o.cap > 0 ? o.cap : l.sf.trunc;
    rep.kv("backend", l.backend);
    rep.kv("cap", std::to_string(cap));
    std::vector<Exponent> lat =
        l.backend == "ball"
            ? lattice_ball(lambda_vector<Ball>(l.sf), cap)
            : resonance_lattice(lambda_vector<Rational>(l.sf), cap);
    rep.kv("count", std::to_string(lat.size()));
    for (std::size_t i = 0; i < lat.size(); ++i)
        rep.kv("m[" + std::to_string(i + 1) + "]", lat[i].str());
    return 0;
}

template <class K>
int run_curve(const VectorField<K>& vf, int N, bool check, Report& rep) {
    auto curve = solve_curve(vf, N);
    for (int j = 0; j + 1 < vf.n; ++j)
        report_series(rep, "phi" + std::to_string(j + 2),
                      curve.phi[static_cast<std::size_t>(j)]);
    if (!check) return 0;
    auto v = nonisolated_check(vf, curve, N);
    if (v.nonisolated) {
        rep.kv("verdict", "nonisolated");
        return 0;
    }
    rep.kv("verdict", "isolated");
    rep.kv("witness_degree", std::to_string(v.witness_degree));
    rep.kv("witness", ScalarOps<K>::str(v.witness));
    return 2;
}

int cmd_curve(const Options& o, Report& rep, bool check) {
    Loaded l = load(o);
    rep.input_digest = l.digest;
    PrecisionScope scope(effective_precision(o, &l.sf));
    int N = effective_degree(o, l.sf);
    rep.kv("backend", l.backend);
    rep.kv("N", std::to_string(N));
    SystemFile work = at_degree(l.sf, N);
    if (l.backend == "ball") return run_curve(field_ball(work), N, check, rep);
    return run_curve(field_rational(work), N, check, rep);
}

template <class K>
int run_straighten(const VectorField<K>& vf, int N, Report& rep,
                   VectorField<K>* straightened) {
    auto curve = solve_curve(vf, N);
    auto v = nonisolated_check(vf, curve, N);
    if (!v.nonisolated) {
        rep.kv("verdict", "isolated");
        rep.kv("witness_degree", std::to_string(v.witness_degree));
        rep.kv("witness", ScalarOps<K>::str(v.witness));
        return 2;
    }
    for (int j = 0; j + 1 < vf.n; ++j)
        report_series(rep, "phi" + std::to_string(j + 2),
                      curve.phi[static_cast<std::size_t>(j)]);
    *straightened = straighten(vf, curve);
    for (int i = 0; i < vf.n; ++i)
        report_series(rep, "f" + std::to_string(i + 1),
                      straightened->f[static_cast<std::size_t>(i)]);
    return 0;
}

int cmd_straighten(const Options& o, Report& rep) {
    Loaded l = load(o);
    rep.input_digest = l.digest;
    PrecisionScope scope(effective_precision(o, &l.sf));
    int N = effective_degree(o, l.sf);
    rep.kv("backend", l.backend);
    rep.kv("N", std::to_string(N));
    SystemFile work = at_degree(l.sf, N);
    if (l.backend == "ball") {
        if (!o.out.empty())
            throw Error(
                "certified coefficients cannot be written back as a system "
                "file; drop --out or use the rational backend");
        VectorField<Ball> s;
        return run_straighten(field_ball(work), N, rep, &s);
    }
    VectorField<Rational> s;
    int code = run_straighten(field_rational(work), N, rep, &s);
    if (code == 0 && !o.out.empty()) spill(o.out, serialize(to_system(s, work)));
    return code;
}

template <class K>
int run_integral(VectorField<K> vf, int N, const std::string& backend,
                 Report& rep) {
    bool fused = false;
    if (!vf.straightened) {
        auto curve = solve_curve(vf, N);
        auto v = nonisolated_check(vf, curve, N);
        if (!v.nonisolated) {
            rep.kv("verdict", "isolated");
            rep.kv("witness_degree", std::to_string(v.witness_degree));
            rep.kv("witness", ScalarOps<K>::str(v.witness));
            return 2;
        }
        vf = straighten(vf, curve);
        fused = true;
    }
    rep.kv("fused", fused ? "true" : "false");
    auto fir = build_first_integral(vf, N);
    rep.kv("m", std::to_string(fir.m));
    rep.kv("a_m", ScalarOps<K>::str(fir.a_m));
    rep.kv("residual_valuation", std::to_string(fir.residual_valuation));
    report_series(rep, "H", fir.H);
    return 0;
}

int cmd_integral(const Options& o, Report& rep) {
    Loaded l = load(o);
    rep.input_digest = l.digest;
    PrecisionScope scope(effective_precision(o, &l.sf));
    int N = effective_degree(o, l.sf);
    rep.kv("backend", l.backend);
    rep.kv("N", std::to_string(N));
    SystemFile work = at_degree(l.sf, N);
    if (l.backend == "ball")
        return run_integral(field_ball(work), N, l.backend, rep);
    return run_integral(field_rational(work), N, l.backend, rep);
}

int cmd_nonint(const Options& o, Report& rep) {
    Loaded l = load(o);
    rep.input_digest = l.digest;
    int cap = o.cap > 0 ? o.cap : l.sf.trunc;
    rep.kv("cap", std::to_string(cap));
    auto nr = nonintegrability_report(lambda_vector<Rational>(l.sf), cap);
    rep.kv("verdict", "trivial kernel at every degree");
    for (int d = 1; d <= nr.cap; ++d) {
        rep.kv("min[" + std::to_string(d) + "]",
               nr.min_abs[static_cast<std::size_t>(d - 1)].str() + " at " +
                   nr.min_arg[static_cast<std::size_t>(d - 1)].str());
    }
    return 0;
}

int cmd_counterexample(const Options& o, Report& rep) {
    if (!o.file.empty())
        throw ParseError(
            "counterexample synthesizes its own system; drop the file "
            "argument");
    int K = o.kmax, N = o.degree > 0 ? o.degree : 12;
    rep.input_digest = digest_hex("counterexample K=" + std::to_string(K) +
                                  " N=" + std::to_string(N) + " m=1");
    PrecisionScope scope(effective_precision(o, nullptr));
    auto z = liouville_zeta(K);
    rep.kv("K", std::to_string(K));
    rep.kv("zeta", z.ball().str());
    rep.kv("m", "1");
    std::vector<Exponent> probes{Exponent{2u, 0u}, Exponent{1u, 1u}};
    auto h2 = h2_coefficients(z, 1, Rational(1), probes);
    for (const auto& c : h2) {
        std::string key = "h2(" + std::to_string(c.mstar[0]) + "," +
                          std::to_string(c.mstar[1]) + ")";
        rep.kv(key, c.exact ? c.value.str() : c.enclosure.str());
    }
    auto vf = counterexample_field(z, 1, N);
    auto fir = build_first_integral(vf, N);
    rep.kv("N", std::to_string(N));
    rep.kv("residual_valuation", std::to_string(fir.residual_valuation));
    report_series(rep, "H", fir.H);
    return 0;
}

int cmd_certify_divergence(const Options& o, Report& rep) {
    if (!o.file.empty())
        throw ParseError(
            "certify-divergence synthesizes its own instance; drop the file "
            "argument");
    rep.input_digest =
        digest_hex("certify-divergence kmax=" + std::to_string(o.kmax) +
                   " m=1");
    PrecisionScope scope(effective_precision(o, nullptr));
    auto cert = divergence_certificate(o.kmax, 1);
    rep.kv("kmax", std::to_string(o.kmax));
    rep.kv("m", std::to_string(cert.m));
    for (const auto& r : cert.records) {
        std::string p = "r" + std::to_string(r.k) + ".";
        rep.kv(p + "p", r.p.get_str());
        rep.kv(p + "q", r.q.get_str());
        rep.kv(p + "d", r.d.get_str());
        rep.kv(p + "divisor_log2", r.divisor_log2.get_str());
        rep.kv(p + "log2r",
               "[" + fmt17(r.log2r_lo) + ", " + fmt17(r.log2r_hi) + "]");
    }
    rep.kv("growth", "strictly increasing");
    return 0;
}

template <class K>
int run_verify(VectorField<K> vf, int N, Report& rep) {
    if (!vf.straightened) {
        auto curve = solve_curve(vf, N);
        auto v = nonisolated_check(vf, curve, N);
        if (!v.nonisolated) {
            rep.kv("verdict", "isolated");
            rep.kv("witness_degree", std::to_string(v.witness_degree));
            rep.kv("witness", ScalarOps<K>::str(v.witness));
            return 2;
        }
        auto ff0 = snapshot(vf, 1.0);
        rep.kv("curve_scan",
               fmt17(curve_equilibrium_scan(ff0, curve, 41, 0.1)));
        vf = straighten(vf, curve);
        rep.kv("fused", "true");
    } else {
        rep.kv("fused", "false");
    }
    auto fir = build_first_integral(vf, N);
    rep.kv("residual_valuation", std::to_string(fir.residual_valuation));
    auto ff = snapshot(vf, 1.0);
    const double T = 5.0, h = 1e-3;
    std::vector<double> a(static_cast<std::size_t>(vf.n), 0.1);
    std::vector<double> b(static_cast<std::size_t>(vf.n), 0.05);
    double d1 = conservation_drift(fir.H, integrate(ff, a, T, h));
    double d2 = conservation_drift(fir.H, integrate(ff, b, T, h));
    rep.kv("drift_r", fmt17(d1));
    rep.kv("drift_r_half", fmt17(d2));
    if (d1 <= 1e-14) {
        rep.kv("drift_window", "exact");
        return 0;
    }
    double want = std::ldexp(1.0, N + 1);
    double ratio = d2 > 0.0 ? d1 / d2 : HUGE_VAL;
    rep.kv("drift_ratio", fmt17(ratio));
    rep.kv("drift_expected", fmt17(want));
    bool pass = ratio >= want / 4.0 && ratio <= want * 4.0;
    rep.kv("drift_window", pass ? "pass" : "fail");
    return pass ? 0 : 2;
}

int cmd_verify(const Options& o, Report& rep) {
    Loaded l = load(o);
    rep.input_digest = l.digest;
    PrecisionScope scope(effective_precision(o, &l.sf));
    int N = effective_degree(o, l.sf);
    rep.kv("backend", l.backend);
    rep.kv("N", std::to_string(N));
    SystemFile work = at_degree(l.sf, N);
    if (l.backend == "ball") return run_verify(field_ball(work), N, rep);
    return run_verify(field_rational(work), N, rep);
}

int dispatch(const Options& o, Report& rep) {
    if (o.command == "resonance") return cmd_resonance(o, rep);
    if (o.command == "curve") return cmd_curve(o, rep, false);
    if (o.command == "check-nonisolated") return cmd_curve(o, rep, true);
    if (o.command == "straighten") return cmd_straighten(o, rep);
    if (o.command == "integral") return cmd_integral(o, rep);
    if (o.command == "nonint") return cmd_nonint(o, rep);
    if (o.command == "counterexample") return cmd_counterexample(o, rep);
    if (o.command == "certify-divergence") return cmd_certify_divergence(o, rep);
    if (o.command == "verify") return cmd_verify(o, rep);
    throw ParseError("unknown command '" + o.command + "'");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
    Options o;
    try {
        o = parse_args(args);
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n" << kUsage;
        return 1;
    }
    Report rep;
    rep.command = o.command;
    auto t0 = std::chrono::steady_clock::now();
    int code = 0;
    try {
        code = dispatch(o, rep);
    } catch (const ResonantTail& e) {
        err << "obstruction: " << e.what() << "\n";
        return 2;
    } catch (const CurveNotInvariant& e) {
        err << "obstruction: " << e.what() << "\n";
        return 2;
    } catch (const ZeroDivisor& e) {
        err << "obstruction: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    auto t1 = std::chrono::steady_clock::now();
    rep.time_ms = static_cast<long>(
        std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0)
            .count());
    out << rep.str();
    if (!o.out.empty() && o.command != "straighten") spill(o.out, rep.str());
    return code;
}

}  // namespace fint::cli

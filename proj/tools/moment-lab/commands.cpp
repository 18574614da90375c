#include "commands.hpp"

#include <chrono>
#include <filesystem>
#include <regex>
#include <utility>

#include <momentlab/acceptance.hpp>
#include <momentlab/kernels.hpp>
#include <momentlab/lgreen.hpp>
#include <momentlab/modforms.hpp>
#include <momentlab/moments.hpp>
#include <momentlab/real.hpp>

#include "fixtures.hpp"

using namespace momentlab;
using nlohmann::ordered_json;

namespace moment_lab {

namespace {

const std::regex& decimal_re() {
    static const std::regex re(R"([+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?)");
    return re;
}

bool is_decimal(const std::string& s) { return std::regex_match(s, decimal_re()); }

Real parse_real(const std::string& s, const char* flag) {
    if (!is_decimal(s)) throw ConfigError(std::string(flag) + ": not a decimal number: '" + s + "'");
    return Real(std::string_view(s));
}

// "a", "bi", "a+bi", "a-bi"
Complex parse_complex(const std::string& raw, const char* flag) {
    std::string s;
    for (char c : raw)
        if (c != ' ') s += c;
    if (s.empty()) throw ConfigError(std::string(flag) + ": empty value");
    if (s.back() != 'i' && s.back() != 'j') return Complex(parse_real(s, flag));
    s.pop_back();
    size_t split = std::string::npos;
    for (size_t i = s.size(); i-- > 1;) {
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    std::string re = split == std::string::npos ? "0" : s.substr(0, split);
    std::string im = split == std::string::npos ? s : s.substr(split);
    if (im.empty() || im == "+" || im == "-") im += "1";
    return Complex(parse_real(re, flag), parse_real(im, flag));
}

std::string str(const Real& r) { return r.to_string(); }
std::string str(const Complex& z) {
    if (z.im.is_zero()) return z.re.to_string();
    return z.re.to_string() + (z.im.sign() < 0 ? "" : "+") + z.im.to_string() + "i";
}
std::string str(bool b) { return b ? "true" : "false"; }
std::string str(long n) { return std::to_string(n); }
std::string str(int n) { return std::to_string(n); }
std::string str(double d) {
    Real r(d);
    return r.to_string(17);
}

template <class T>
std::vector<T> or_default(const std::vector<T>& v, std::vector<T> fallback) {
    return v.empty() ? fallback : v;
}

// The decimal as typed is echoed in tables so reruns compare byte for byte.
std::vector<std::pair<std::string, Real>> x_values(const RunConfig& cfg, std::vector<std::string> fallback) {
    std::vector<std::pair<std::string, Real>> xs;
    for (const auto& s : or_default(cfg.x, std::move(fallback))) xs.emplace_back(s, parse_real(s, "--x"));
    return xs;
}

LGCase lg_case(const RunConfig& cfg) {
    return cfg.lg_case == "exp" ? LGCase::exponential : LGCase::oscillatory;
}

KernelParams params(int k, const Complex& u, const Complex& v) {
    KernelParams p;
    p.k = k;
    p.u = u;
    p.v = v;
    return p;
}

int effective_n_max(int weight, int n_max) { return n_max > 0 ? n_max : default_n_max(weight); }

FormSpace load_space(const RunConfig& cfg, int weight) {
    int n_max = effective_n_max(weight, cfg.n_max);
    auto dir = fixture_dir(cfg.fixtures);
    if (dir) {
        auto file = fixture_path(*dir, weight);
        if (auto cached = read_fixture(file, weight, n_max, cfg.c_max)) return std::move(*cached);
    }
    FormSpace space = form_space(weight, n_max, cfg.c_max);
    if (dir) write_fixture(fixture_path(*dir, weight), space);
    return space;
}

// ---- kernels ----

CommandResult kernels_eval(const RunConfig& cfg) {
    Complex u = parse_complex(cfg.u, "--u"), v = parse_complex(cfg.v, "--v");
    bool central = u.re.is_zero() && u.im.is_zero() && v.re.is_zero() && v.im.is_zero();
    CommandResult r;
    r.table.columns = {"k", "x", "u", "v", "phi", "Phi", "psi", "phi_tail", "Phi_tail"};
    for (int k : or_default(cfg.k_list, {6})) {
        for (const auto& [xs, x] : x_values(cfg, {"0.3"})) {
            Complex phi;
            Real phi_tail;
            if (central) {
                auto p = phi_k(x, k);
                phi = p.value;
                phi_tail = p.tail_bound;
            } else {
                phi = phi_k_uv(x, params(k, u, v));
            }
            auto P = Phi_k(x, params(k, u, v));
            auto s = psi_k(x, params(k, u, v));
            r.table.add({str(k), xs, cfg.u, cfg.v, str(phi), str(P.value), str(s.value), str(phi_tail),
                         str(P.tail_bound)});
        }
    }
    return r;
}

CommandResult kernels_ode(const RunConfig& cfg) {
    CommandResult r;
    r.table.columns = {"k", "x", "form", "residual"};
    const std::pair<OdeForm, const char*> forms[] = {
        {OdeForm::phi, "phi"}, {OdeForm::Y_form, "Y"}, {OdeForm::Phi_form, "Phi"}};
    for (int k : or_default(cfg.k_list, {6, 8, 12})) {
        for (const auto& [xs, x] : x_values(cfg, {"0.1", "0.25", "0.3", "0.5", "0.7", "0.9"})) {
            for (const auto& [which, name] : forms) r.table.add({str(k), xs, name, str(ode_residual(which, x, k))});
        }
    }
    return r;
}

// ---- lg ----

CommandResult lg_transform_cmd(const RunConfig& cfg) {
    CommandResult r;
    r.table.columns = {"case", "x", "xi", "alpha", "potential"};
    LGCase which = lg_case(cfg);
    for (const auto& [xs, x] : x_values(cfg, {"0.1", "0.3", "0.5"})) {
        auto t = lg_transform(which, x);
        r.table.add({cfg.lg_case, xs, str(t.xi), str(t.alpha), str(lg_potential(which, t.xi))});
    }
    return r;
}

CommandResult lg_constants_cmd(const RunConfig& cfg) {
    CommandResult r;
    r.table.columns = {"k", "N", "C_Y", "C_J", "C_K", "Z_Y_at_xi2", "Z_Y_prime_at_xi2"};
    for (int k : or_default(cfg.k_list, {20, 40, 80, 160})) {
        auto c = lg_constants(k, cfg.N);
        r.table.add({str(k), str(cfg.N), str(c.C_Y), str(c.C_J), str(c.C_K), str(c.Z_Y_at_xi2),
                     str(c.Z_Y_prime_at_xi2)});
    }
    return r;
}

CommandResult lg_compare_cmd(const RunConfig& cfg) {
    CommandResult r;
    r.table.columns = {"case", "N", "x", "k", "exact", "approx", "error", "envelope", "windowed_error", "slope"};
    LGCase which = lg_case(cfg);
    auto ks = or_default(cfg.k_list, {20, 40, 80, 160});
    for (const auto& [xs, x] : x_values(cfg, {"0.3"})) {
        std::string slope = ks.size() >= 2 ? str(error_order_fit(which, cfg.N, ks, x)) : std::string("nan");
        for (int k : ks) {
            LGApprox a;
            Real exact;
            if (which == LGCase::oscillatory) {
                a = lg_approx_phi(x, k, cfg.N);
                exact = phi_k(x, k).value.re;
            } else {
                a = lg_approx_Phi(x, k, cfg.N);
                exact = Phi_k(x, params(k, Complex(0), Complex(0))).value.re;
            }
            Real err = abs(a.value - exact);
            if (err > a.error_envelope) r.violation = true;
            r.table.add({cfg.lg_case, str(cfg.N), xs, str(k), str(exact), str(a.value), str(err),
                         str(a.error_envelope), str(lg_windowed_error(which, cfg.N, k, x)), slope});
        }
    }
    if (r.violation) r.message = "approximation error above its envelope";
    return r;
}

// ---- oracle ----

CommandResult oracle_forms(const RunConfig& cfg) {
    CommandResult r;
    r.table.columns = {"weight", "index", "lambda_2", "lambda_3", "omega", "L_half", "sym2"};
    for (int w : or_default(cfg.weights, {12})) {
        FormSpace space = load_space(cfg, w);
        for (size_t i = 0; i < space.forms.size(); ++i) {
            const auto& f = space.forms[i];
            r.table.add({str(w), str(static_cast<int>(i)), str(f.lambda.at(2)), str(f.lambda.at(3)), str(f.omega),
                         str(f.central_value), str(f.sym2_at_1)});
        }
    }
    return r;
}

CommandResult oracle_weights(const RunConfig& cfg) {
    CommandResult r;
    r.table.columns = {"weight", "index", "omega", "omega_error_bound", "condition", "c_used"};
    for (int w : or_default(cfg.weights, {12})) {
        FormSpace space = load_space(cfg, w);
        for (size_t i = 0; i < space.weights.omega.size(); ++i) {
            r.table.add({str(w), str(static_cast<int>(i)), str(space.weights.omega[i]),
                         str(space.weights.omega_error_bound.at(i)), str(space.weights.condition),
                         str(space.weights.c_used)});
        }
    }
    return r;
}

CommandResult oracle_petersson(const RunConfig& cfg) {
    CommandResult r;
    r.table.columns = {"weight", "m", "n", "c_max", "residual", "certified_tail", "within_tail"};
    for (int w : or_default(cfg.weights, {12})) {
        if (cusp_dimension(w) == 0) continue;
        for (int m = 1; m <= 4; ++m) {
            for (int n = m; n <= 4; ++n) {
                auto p = petersson_residual(w, m, n, cfg.c_max);
                bool ok = p.residual <= p.certified_tail;
                r.violation = r.violation || !ok;
                r.table.add({str(w), str(m), str(n), str(cfg.c_max), str(p.residual), str(p.certified_tail), str(ok)});
            }
        }
    }
    if (r.violation) r.message = "Petersson residual above its certified tail";
    return r;
}

// ---- moments ----

std::vector<std::pair<int, int>> grid(const RunConfig& cfg) {
    std::vector<std::pair<int, int>> pts;
    for (int w : or_default(cfg.weights, {12}))
        for (int l : or_default(cfg.ells, {1})) pts.emplace_back(l, w);
    return pts;
}

CommandResult moments_exact(const RunConfig& cfg) {
    CommandResult r;
    r.table.columns = {"weight", "l", "exact", "oracle", "residual", "certified_tail", "main_term"};
    SecondMomentConfig mc;
    mc.c_max = cfg.c_max;
    auto reports = second_moment_grid(grid(cfg), mc);
    for (const auto& m : reports) {
        if (m.residual > m.certified_tail) r.violation = true;
        r.table.add({str(m.weight), str(m.l), str(m.exact), str(m.oracle), str(m.residual), str(m.certified_tail),
                     str(m.main_term)});
    }
    if (r.violation) r.message = "second-moment residual above its certified tail";
    return r;
}

CommandResult moments_exact_uv(const RunConfig& cfg) {
    Complex u = parse_complex(cfg.u, "--u"), v = parse_complex(cfg.v, "--v");
    CommandResult r;
    r.table.columns = {"weight", "l", "u", "v", "lhs", "rhs", "residual", "certified_tail", "main_terms",
                       "error_term"};
    for (auto [l, w] : grid(cfg)) {
        auto m = second_moment_exact_uv(l, w, u, v);
        if (m.residual > m.certified_tail) r.violation = true;
        r.table.add({str(w), str(l), cfg.u, cfg.v, str(m.lhs), str(m.rhs), str(m.residual), str(m.certified_tail),
                     str(m.main_terms), str(m.error_term)});
    }
    if (r.violation) r.message = "(u,v) moment residual above its certified tail";
    return r;
}

CommandResult moments_first(const RunConfig& cfg) {
    Complex u = parse_complex(cfg.u, "--u"), v = parse_complex(cfg.v, "--v");
    CommandResult r;
    r.table.columns = {"weight", "l", "u", "v", "lhs", "rhs", "residual", "certified_tail", "V1", "cn_max",
                       "main", "envelope"};
    for (auto [l, w] : grid(cfg)) {
        auto m = first_moment_exact(l, w, u, v);
        if (m.residual > m.certified_tail) r.violation = true;
        r.table.add({str(w), str(l), cfg.u, cfg.v, str(m.lhs), str(m.rhs), str(m.residual), str(m.certified_tail),
                     str(m.V1), str(m.cn_max), str(first_moment_main(l, w)), str(first_moment_envelope(l, w))});
    }
    if (r.violation) r.message = "first-moment residual above its certified tail";
    return r;
}

CommandResult moments_averaged(const RunConfig& cfg) {
    Real K = parse_real(cfg.K, "--K");
    CommandResult r;
    r.table.columns = {"l", "K", "A1_direct", "A1_predicted", "A2_direct", "A2_predicted", "A2_predicted_4pi",
                       "weights"};
    TestWeight h = bump_weight(Real(1), Real(2));
    for (int l : or_default(cfg.ells, {1})) {
        auto a = averaged_moments(l, K, h);
        std::string ws;
        for (int w : a.weights) ws += (ws.empty() ? "" : ";") + std::to_string(w);
        r.table.add({str(l), cfg.K, str(a.A1_direct), str(a.A1_predicted), str(a.A2_direct), str(a.A2_predicted),
                     str(a.A2_predicted_4pi), ws});
    }
    return r;
}

CommandResult moments_bounds(const RunConfig& cfg) {
    CommandResult r;
    r.table.columns = {"weight", "l", "Phi_bound", "Phi_observed", "phi_bound", "phi_observed"};
    for (auto [l, w] : grid(cfg)) {
        auto b = error_term_bounds(l, w);
        if (b.Phi_observed > b.Phi_bound || b.phi_observed > b.phi_bound) r.violation = true;
        r.table.add({str(w), str(l), str(b.Phi_bound), str(b.Phi_observed), str(b.phi_bound), str(b.phi_observed)});
    }
    if (r.violation) r.message = "observed error term above its envelope";
    return r;
}

// ---- mollifier ----

MollifierConfig mollifier(const RunConfig& cfg) {
    MollifierConfig m;
    m.Delta = parse_real(cfg.delta, "--delta");
    return m;
}

CommandResult mollify_cmd(const RunConfig& cfg) {
    CommandResult r;
    r.table.columns = {"weight", "Delta", "M", "M1", "M1_pred", "M2", "M2_pred", "M1_tilde_bound",
                       "outside_lemma_cap"};
    MollifierConfig m = mollifier(cfg);
    for (int w : or_default(cfg.weights, {12})) {
        auto mm = mollified_moments(w, m);
        r.table.add({str(w), cfg.delta, str(mm.M), str(mm.M1), str(mm.M1_pred), str(mm.M2), str(mm.M2_pred),
                     str(mm.M1_tilde_bound), str(mm.outside_lemma_cap)});
    }
    return r;
}

CommandResult nonvanishing_cmd(const RunConfig& cfg) {
    CommandResult r;
    r.table.columns = {"weight", "proportion_observed", "proportion_observed_harmonic", "lower_bound", "threshold",
                       "best_Delta", "target"};
    MollifierConfig m = mollifier(cfg);
    for (int w : or_default(cfg.weights, {12, 16, 20, 24, 28})) {
        auto n = nonvanishing_report(w, m);
        if (n.lower_bound > n.proportion_observed) r.violation = true;
        r.table.add({str(w), str(n.proportion_observed), str(n.proportion_observed_harmonic), str(n.lower_bound),
                     str(n.threshold), str(n.best_Delta), str(nonvanishing_target(n.best_Delta))});
    }
    if (r.violation) r.message = "lower bound exceeds the observed proportion";
    return r;
}

// ---- acceptance ----

CommandResult acceptance_cmd(const RunConfig& cfg) {
    CommandResult r;
    r.table.columns = {"criterion", "status", "title", "detail"};
    std::vector<int> ids;
    if (cfg.all) {
        for (int i = 1; i <= acceptance_criterion_count; ++i) ids.push_back(i);
    } else {
        ids.push_back(cfg.criterion);
    }
    int failed = 0;
    for (int id : ids) {
        auto c = run_criterion(id);
        if (!c.pass) ++failed;
        r.table.add({str(c.id), c.pass ? "PASS" : "FAIL", c.title, c.detail});
    }
    if (failed) {
        r.violation = true;
        r.message = std::to_string(failed) + " acceptance criteria failed";
    }
    return r;
}

using Handler = CommandResult (*)(const RunConfig&);

Handler lookup(const RunConfig& cfg) {
    static const std::pair<const char*, Handler> table[] = {
        {"kernels eval", kernels_eval},
        {"kernels ode-residual", kernels_ode},
        {"lg transform", lg_transform_cmd},
        {"lg constants", lg_constants_cmd},
        {"lg compare", lg_compare_cmd},
        {"oracle forms", oracle_forms},
        {"oracle weights", oracle_weights},
        {"oracle verify-petersson", oracle_petersson},
        {"moments exact", moments_exact},
        {"moments exact-uv", moments_exact_uv},
        {"moments first", moments_first},
        {"moments averaged", moments_averaged},
        {"moments bounds", moments_bounds},
        {"mollify", mollify_cmd},
        {"nonvanishing", nonvanishing_cmd},
        {"acceptance", acceptance_cmd},
    };
    std::string name = cfg.command();
    for (const auto& [n, h] : table)
        if (name == n) return h;
    throw ConfigError("unknown command '" + name + "'");
}

}  // namespace

ordered_json RunConfig::flags_json() const {
    ordered_json j;
    j["weight"] = weights;
    j["ell"] = ells;
    j["k_list"] = k_list;
    j["x"] = x;
    j["case"] = lg_case;
    j["N"] = N;
    j["u"] = u;
    j["v"] = v;
    j["K"] = K;
    j["delta"] = delta;
    j["c_max"] = c_max;
    j["n_max"] = n_max;
    j["format"] = format == Format::json ? "json" : "csv";
    j["out"] = out;
    j["fixtures"] = fixtures;
    if (group == "acceptance") {
        j["all"] = all;
        j["criterion"] = criterion;
    }
    return j;
}

void validate(const RunConfig& cfg) {
    lookup(cfg);
    if (cfg.prec_bits < 64 || cfg.prec_bits > 8192) throw ConfigError("--prec-bits must lie in [64, 8192]");
    for (int w : cfg.weights)
        if (w < 2 || w % 2) throw ConfigError("--weight must be a positive even integer, got " + std::to_string(w));
    for (int l : cfg.ells)
        if (l < 1) throw ConfigError("--ell must be positive, got " + std::to_string(l));
    for (int k : cfg.k_list)
        if (k < 1) throw ConfigError("--k-list entries must be positive, got " + std::to_string(k));
    for (const auto& s : cfg.x) {
        Real x = parse_real(s, "--x");
        if (x.sign() <= 0 || !(x < Real(1))) throw ConfigError("--x must lie in (0, 1), got " + s);
        if (cfg.group == "lg" && cfg.lg_case == "osc" && x > Real(1) / 2)
            throw ConfigError("--x must lie in (0, 1/2] for the oscillatory case, got " + s);
    }
    if (cfg.lg_case != "osc" && cfg.lg_case != "exp") throw ConfigError("--case must be osc or exp");
    if (cfg.N < 0 || cfg.N > 1) throw ConfigError("--N must be 0 or 1");
    if (cfg.c_max < 1) throw ConfigError("--c-max must be positive");
    if (cfg.n_max < 0) throw ConfigError("--n-max must be non-negative");
    parse_complex(cfg.u, "--u");
    parse_complex(cfg.v, "--v");
    if (parse_real(cfg.K, "--K").sign() <= 0) throw ConfigError("--K must be positive");
    Real d = parse_real(cfg.delta, "--delta");
    if (d.sign() <= 0 || !(d < Real(1))) throw ConfigError("--delta must lie in (0, 1)");
    if (cfg.group == "acceptance") {
        if (cfg.all == (cfg.criterion != 0)) throw ConfigError("acceptance needs exactly one of --all or --criterion N");
        if (!cfg.all && (cfg.criterion < 1 || cfg.criterion > acceptance_criterion_count))
            throw ConfigError("--criterion must lie in 1.." + std::to_string(acceptance_criterion_count));
    }
}

CommandResult run_command(const RunConfig& cfg) { return lookup(cfg)(cfg); }

}  // namespace moment_lab

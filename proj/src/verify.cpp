#include "mlv/verify.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <limits>
#include <stdexcept>

namespace mlv {

namespace {

using nlohmann::json;

struct Outcome {
    std::string expected;
    std::string computed;
    bool ok = false;
};

class Runner {
public:
    Runner(const TowerContext& ctx, const VerifyConfig& cfg, std::string suite, Report& out)
        : ctx_(ctx), cfg_(cfg), suite_(std::move(suite)), out_(out)
    {
    }

    void check(std::string id, json inputs, const std::function<Outcome()>& body)
    {
        CheckResult r;
        r.suite = suite_;
        r.check_id = std::move(id);
        inputs["p"] = ctx_.p();
        r.inputs = std::move(inputs);
        auto start = std::chrono::steady_clock::now();
        try {
            Outcome o = body();
            r.expected = std::move(o.expected);
            r.computed = std::move(o.computed);
            r.status = o.ok ? "pass" : "fail";
        } catch (const std::exception& e) {
            r.computed = std::string("error: ") + e.what();
            r.status = "error";
        }
        if (cfg_.timings)
            r.millis = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
        out_.push_back(std::move(r));
    }

private:
    const TowerContext& ctx_;
    const VerifyConfig& cfg_;
    std::string suite_;
    Report& out_;
};

std::mt19937_64 suite_rng(std::uint64_t seed, std::size_t suite_index)
{
    return std::mt19937_64(seed ^ (0x9E3779B97F4A7C15ULL * (suite_index + 1)));
}

std::int64_t ipow(std::uint32_t p, int n) { return checked_pow(p, static_cast<unsigned>(n)); }

std::vector<IndexPair> grid(const TowerContext& ctx, int max_n, int max_i)
{
    std::vector<IndexPair> out;
    for (int n = 0; n <= max_n; ++n)
        for (int i = n; i <= max_i; ++i)
            if (ctx.in_S(n, i)) out.push_back({n, i});
    std::sort(out.begin(), out.end());
    return out;
}

Rat exact_value(const CertifiedVal& v, const std::string& what)
{
    if (!v.is_exact() || v.value().is_inf()) throw std::runtime_error(what + " not certified finite: " + v.str());
    return v.value().value();
}

Poly x_minus(const FieldTower& F, const PuiseuxSeries& c) { return Poly::x(&F) - Poly::constant(c); }

/// Finite part of s below delta(0, j), an element of K.
PuiseuxSeries row0_truncation(const TowerContext& ctx, int j)
{
    auto tr = ctx.stream_s_trunc(0, j)->exact_element();
    if (!tr || tr->head) throw std::logic_error("s_{0,j} expected to be a finite series");
    return tr->finite;
}

void suite_vivs(const TowerContext& ctx, const VerifyConfig& cfg, Runner& run)
{
    auto idx = grid(ctx, cfg.levels, cfg.grid_max_i);
    for (const auto& a : idx) {
        for (const auto& b : idx) {
            json in = {{"n", a.n}, {"i", a.i}, {"m", b.n}, {"j", b.i}};
            run.check("v" + a.str() + "(x-s" + b.str() + ")", in, [&] {
                Rat expected = min(ctx.delta(a.n, a.i), ctx.delta(b.n, b.i));
                CertifiedVal d = stream_difference_valuation(*ctx.stream_s_trunc(a.n, a.i), *ctx.stream_s_trunc(b.n, b.i),
                                                             cfg.caps.max_terms_compare);
                if (!d.is_exact()) throw std::runtime_error("difference only bounded: " + d.str());
                ValOrInf got = min(d.value(), ValOrInf(ctx.delta(a.n, a.i)));
                return Outcome{expected.str(), got.str(), got == ValOrInf(expected)};
            });
            if (b.n != 0) continue;
            run.check("rho" + a.str() + "(x-s" + b.str() + ")", in, [&] {
                Rat expected = min(ctx.delta(a.n, a.i), ctx.delta(b.n, b.i));
                Poly f = x_minus(ctx.field(), row0_truncation(ctx, b.i));
                CertifiedVal got = ctx.rho_value(a.n, a.i, f, cfg.caps);
                return Outcome{expected.str(), got.str(), got.is_exact() && got.value() == ValOrInf(expected)};
            });
        }
    }
}

int small_degree(const TowerContext& ctx, int levels) { return static_cast<int>(std::min<std::int64_t>(ipow(ctx.p(), levels), 4)); }

void suite_monotone(const TowerContext& ctx, const VerifyConfig& cfg, Runner& run, std::mt19937_64& rng)
{
    auto idx = grid(ctx, cfg.levels, cfg.grid_max_i);
    for (int k = 0; k < cfg.samples; ++k) {
        Poly f = random_poly(ctx.field(), rng, static_cast<int>(uniform_int(rng, 1, small_degree(ctx, cfg.levels))), false);
        run.check("sample " + std::to_string(k), {{"f", f.str()}}, [&] {
            Rat vs = exact_value(ctx.vs_value(f, cfg.caps), "v_s(f)");
            std::string seq;
            bool ok = true;
            std::optional<Rat> prev;
            for (const auto& a : idx) {
                Rat r = exact_value(ctx.rho_value(a.n, a.i, f, cfg.caps), "rho" + a.str() + "(f)");
                if ((prev && r < *prev) || r > vs) ok = false;
                prev = r;
                seq += (seq.empty() ? "" : " ") + r.str();
            }
            return Outcome{"nondecreasing, <= " + vs.str(), seq, ok};
        });
    }
}

void suite_stability(const TowerContext& ctx, const VerifyConfig& cfg, Runner& run, std::mt19937_64& rng)
{
    for (int n = 0; n <= cfg.levels; ++n) {
        for (int k = 0; k < cfg.samples; ++k) {
            Poly g = random_poly(ctx.field(), rng, static_cast<int>(uniform_int(rng, 1, ipow(ctx.p(), n))), true);
            run.check("C_" + std::to_string(n) + " sample " + std::to_string(k), {{"n", n}, {"g", g.str()}}, [&] {
                Rat vs = exact_value(ctx.vs_value(g, cfg.caps), "v_s(g)");
                StabilityWitness w = ctx.stability_value(n, g, cfg.caps);
                CertifiedVal at = ctx.rho_value(n, w.witness.i, g, cfg.caps);
                bool ok = w.witness.i <= cfg.caps.index_budget && at.is_exact() && at.value() == ValOrInf(vs);
                return Outcome{vs.str() + " within i <= " + std::to_string(cfg.caps.index_budget),
                               at.str() + " at " + w.witness.str(), ok};
            });
        }
    }
}

void suite_unstable(const TowerContext& ctx, const VerifyConfig& cfg, Runner& run)
{
    for (int n = 0; n < cfg.levels; ++n) {
        for (int i = n; i <= cfg.unstable_max_i; i = ctx.index_successor(n, i).i) {
            run.check("rho(" + std::to_string(n) + "," + std::to_string(i) + ")(phi_" + std::to_string(n + 1) + ")",
                      {{"n", n}, {"i", i}}, [&] {
                          Rat gamma = ctx.gamma(n + 1, cfg.caps);
                          CertifiedVal v = ctx.rho_value(n, i, ctx.phi(n + 1), cfg.caps);
                          bool ok = v.is_exact() && v.value() < ValOrInf(gamma);
                          std::string expected = "< " + gamma.str();
                          if (ctx.p() == 2 && n == 0) {
                              Rat closed(-1, checked_pow(2, static_cast<unsigned>(i)));
                              ok = ok && v.value() == ValOrInf(closed);
                              expected = closed.str();
                          }
                          return Outcome{expected, v.str(), ok};
                      });
        }
    }
}

void suite_limit_equality(const TowerContext& ctx, const VerifyConfig& cfg, Runner& run, std::mt19937_64& rng)
{
    for (int n = 0; n < cfg.levels; ++n) {
        auto family = ctx.family(n);
        const int max_deg = static_cast<int>(ipow(ctx.p(), n + 2) - 1);
        for (int k = 0; k < cfg.samples; ++k) {
            Poly f = random_poly(ctx.field(), rng, static_cast<int>(uniform_int(rng, 0, max_deg)), false);
            run.check("C_" + std::to_string(n) + " sample " + std::to_string(k), {{"n", n}, {"f", f.str()}}, [&] {
                CertifiedVal expected = ctx.mu_value(n + 1, f, cfg.caps);
                CertifiedVal got = limit_aug_value(*family, ctx.phi(n + 1), ctx.gamma(n + 1, cfg.caps), f, cfg.caps);
                return Outcome{expected.str(), got.str(), expected.is_exact() && got.is_exact() && expected.value() == got.value()};
            });
        }
    }
}

void suite_mlv(const TowerContext& ctx, const VerifyConfig& cfg, Runner& run)
{
    MLVChain chain;
    std::vector<ValuationPtr> nodes{ctx.mu(0)};
    try {
        chain = ctx.chain(cfg.levels, cfg.caps);
        if (cfg.corrupt_gamma && !chain.steps.empty()) chain.steps[0].gamma = *cfg.corrupt_gamma;
        for (int n = 1; n <= cfg.levels; ++n) {
            const ChainStep& st = chain.steps[static_cast<std::size_t>(n - 1)];
            nodes.push_back(Valuation::limit(ctx.family(n - 1), st.phi, st.gamma, cfg.caps));
        }
    } catch (const std::exception& e) {
        run.check("construction", {{"levels", cfg.levels}}, [&]() -> Outcome { throw std::runtime_error(e.what()); });
        return;
    }
    auto vs = ctx.vs();
    ChainReport rep = chain_validate(chain, nodes, cfg.caps, vs.get());
    for (const auto& c : rep.checks)
        run.check(c.name, {{"levels", cfg.levels}}, [&] { return Outcome{"holds", c.detail, c.ok}; });
    for (int n = 1; n <= cfg.levels; ++n) {
        const ChainStep& st = chain.steps[static_cast<std::size_t>(n - 1)];
        run.check("mu_" + std::to_string(n) + "(phi_" + std::to_string(n) + ") as depth-zero", {{"n", n}}, [&] {
            CertifiedVal v = ctx.mu_value(n, st.phi, cfg.caps);
            return Outcome{st.gamma.str(), v.str(), v.is_exact() && v.value() == ValOrInf(st.gamma)};
        });
    }
}

void suite_stable_limit(const TowerContext& ctx, const VerifyConfig& cfg, Runner& run, std::mt19937_64& rng)
{
    for (int n = 1; n <= cfg.levels; ++n) {
        const int max_deg = static_cast<int>(ipow(ctx.p(), n) - 1);
        for (int k = 0; k < cfg.samples; ++k) {
            Poly f = random_poly(ctx.field(), rng, static_cast<int>(uniform_int(rng, 0, max_deg)), false);
            run.check("mu_" + std::to_string(n) + " sample " + std::to_string(k), {{"n", n}, {"f", f.str()}}, [&] {
                CertifiedVal expected = ctx.vs_value(f, cfg.caps);
                CertifiedVal got = ctx.mu_value(n, f, cfg.caps);
                return Outcome{expected.str(), got.str(), expected.is_exact() && got.is_exact() && expected.value() == got.value()};
            });
        }
    }
}

void suite_ball_degree(const TowerContext& ctx, const VerifyConfig& cfg, Runner& run, std::mt19937_64& rng)
{
    for (int n = 1; n <= cfg.levels; ++n) {
        run.check("krasner(s_" + std::to_string(n) + "," + std::to_string(n) + ")", {{"n", n}}, [&] {
            Rat got = ctx.krasner_delta(n);
            return Outcome{std::to_string(n - 1), got.str(), got == Rat(n - 1)};
        });
        run.check("deg phi_" + std::to_string(n), {{"n", n}}, [&] {
            auto expected = ipow(ctx.p(), n);
            int got = ctx.phi(n).degree();
            return Outcome{std::to_string(expected), std::to_string(got), got == expected && ctx.phi(n).is_monic()};
        });
        const Rat radius(n - 1);
        for (int k = 0; k < cfg.samples; ++k) {
            const int m = static_cast<int>(uniform_int(rng, 0, n - 1));
            std::vector<int> row;
            for (int i = m; i <= std::max(cfg.grid_max_i, m); i = ctx.index_successor(m, i).i) row.push_back(i);
            const int j = row[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(row.size()) - 1))];
            PuiseuxSeries c = random_coefficient(ctx.field(), rng);
            json in = {{"n", n}, {"truncation", IndexPair{m, j}.str()}, {"offset", c.str()}};
            run.check("ball(s_" + std::to_string(n) + "," + std::to_string(n) + ") sample " + std::to_string(k), in, [&] {
                auto a = ctx.tower_stream(IndexPair{m, j}, c);
                CertifiedVal d = stream_difference_valuation(*ctx.stream_s_trunc(n, n), *a, cfg.caps.max_terms_compare);
                bool ok = d.is_exact() && d.value() < ValOrInf(radius);
                return Outcome{"< " + radius.str() + " (no counterexample)", d.str(), ok};
            });
        }
    }
}

void suite_transcendence(const TowerContext& ctx, const VerifyConfig& cfg, Runner& run, std::mt19937_64& rng)
{
    std::vector<Poly> corpus;
    for (int n = 1; n <= cfg.levels; ++n) corpus.push_back(ctx.phi(n));
    for (int k = 0; k < cfg.samples; ++k)
        corpus.push_back(random_poly(ctx.field(), rng, static_cast<int>(uniform_int(rng, 1, small_degree(ctx, cfg.levels))), false));
    for (std::size_t k = 0; k < corpus.size(); ++k) {
        const Poly& f = corpus[k];
        run.check("v(f(s)) sample " + std::to_string(k), {{"f", f.str()}}, [&] {
            CertifiedVal v = ctx.vs_value(f, cfg.caps);
            return Outcome{"finite", v.str(), v.is_exact() && !v.value().is_inf()};
        });
    }
}

} // namespace

const std::vector<std::string>& suite_names()
{
    static const std::vector<std::string> names{"vivs",         "monotone",
                                                "stability",    "unstable",
                                                "limit-equality", "mlv",
                                                "stable-limit", "ball-degree-evidence",
                                                "transcendence-evidence", "all"};
    return names;
}

Report run_suite(const TowerContext& ctx, const std::string& suite, const VerifyConfig& cfg)
{
    const auto& names = suite_names();
    auto it = std::find(names.begin(), names.end(), suite);
    if (it == names.end()) throw std::invalid_argument("unknown suite '" + suite + "'");
    Report out;
    if (suite == "all") {
        for (const auto& s : names)
            if (s != "all") {
                Report part = run_suite(ctx, s, cfg);
                out.insert(out.end(), part.begin(), part.end());
            }
        return out;
    }
    const auto index = static_cast<std::size_t>(it - names.begin());
    auto rng = suite_rng(cfg.seed, index);
    Runner run(ctx, cfg, suite, out);
    if (suite == "vivs") suite_vivs(ctx, cfg, run);
    else if (suite == "monotone") suite_monotone(ctx, cfg, run, rng);
    else if (suite == "stability") suite_stability(ctx, cfg, run, rng);
    else if (suite == "unstable") suite_unstable(ctx, cfg, run);
    else if (suite == "limit-equality") suite_limit_equality(ctx, cfg, run, rng);
    else if (suite == "mlv") suite_mlv(ctx, cfg, run);
    else if (suite == "stable-limit") suite_stable_limit(ctx, cfg, run, rng);
    else if (suite == "ball-degree-evidence") suite_ball_degree(ctx, cfg, run, rng);
    else suite_transcendence(ctx, cfg, run, rng);
    return out;
}

bool all_passed(const Report& r)
{
    return std::all_of(r.begin(), r.end(), [](const CheckResult& c) { return c.status == "pass"; });
}

nlohmann::json report_to_json(const Report& r)
{
    json arr = json::array();
    for (const auto& c : r)
        arr.push_back({{"suite", c.suite},
                       {"check_id", c.check_id},
                       {"inputs", c.inputs},
                       {"expected", c.expected},
                       {"computed", c.computed},
                       {"status", c.status},
                       {"millis", c.millis}});
    return arr;
}

std::int64_t uniform_int(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi)
{
    if (hi < lo) throw std::invalid_argument("uniform_int: empty range");
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(rng());
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
    std::uint64_t x;
    do x = rng();
    while (x >= limit);
    return lo + static_cast<std::int64_t>(x % span);
}

PuiseuxSeries random_coefficient(const FieldTower& F, std::mt19937_64& rng)
{
    const int count = static_cast<int>(uniform_int(rng, 1, 2));
    std::vector<std::int64_t> ks;
    while (static_cast<int>(ks.size()) < count) {
        std::int64_t k = uniform_int(rng, -16, 16);
        if (std::find(ks.begin(), ks.end(), k) == ks.end()) ks.push_back(k);
    }
    std::sort(ks.begin(), ks.end());
    std::vector<Term> terms;
    for (auto k : ks) terms.push_back({Rat(k, 8), F.from_int(uniform_int(rng, 1, static_cast<std::int64_t>(F.p()) - 1))});
    return PuiseuxSeries(&F, std::move(terms));
}

Poly random_poly(const FieldTower& F, std::mt19937_64& rng, int degree, bool monic)
{
    std::vector<PuiseuxSeries> c;
    for (int k = 0; k < degree; ++k) c.push_back(random_coefficient(F, rng));
    c.push_back(monic ? PuiseuxSeries::constant(&F, 1) : random_coefficient(F, rng));
    return Poly(&F, std::move(c));
}

} // namespace mlv

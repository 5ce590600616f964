#include "kobdd/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace kobdd {

std::string_view to_string(Model m) noexcept
{
    switch (m) {
    case Model::det: return "det";
    case Model::nondet: return "nondet";
    case Model::prob: return "prob";
    case Model::quantum: return "quantum";
    }
    return "unknown";
}

Model model_of(Semantics s) noexcept
{
    switch (s) {
    case Semantics::deterministic: return Model::det;
    case Semantics::nondeterministic: return Model::nondet;
    case Semantics::probabilistic: return Model::prob;
    case Semantics::quantum: return Model::quantum;
    }
    return Model::det;
}

double bound_log2(Model model, double k, double w, Constants const& constants)
{
    if (!(k >= 1.0) || !(w >= 1.0)) { throw std::invalid_argument("bound_log2 needs k >= 1 and w >= 1"); }
    switch (model) {
    case Model::det: return ((k - 1.0) * w + 1.0) * std::log2(w);
    case Model::nondet: return w * ((k - 1.0) * w + 1.0);
    case Model::prob: {
        if (!(constants.c1 > 0.0) || !(constants.c2 > 0.0)) {
            throw std::invalid_argument("constants C1 and C2 must be positive");
        }
        double const base = constants.c1 * k * (constants.c2 + std::log2(w) + std::log2(k));
        return (k + 1.0) * w * w * std::log2(base);
    }
    case Model::quantum:
        if (!(constants.c > 0.0)) { throw std::invalid_argument("constant C must be positive"); }
        return constants.c * (k * w) * (k * w) * std::log2(w);
    }
    return 0.0;
}

std::string_view to_string(LowerBound b) noexcept
{
    switch (b) {
    case LowerBound::saf: return "saf";
    case LowerBound::saf_cor: return "saf_cor";
    case LowerBound::mxpj: return "mxpj";
    case LowerBound::mxpj_cor: return "mxpj_cor";
    }
    return "unknown";
}

double lower_log2(LowerBound bound, int k, int w_or_d)
{
    double const kk = k;
    double const x = w_or_d;
    switch (bound) {
    case LowerBound::saf: return (kk - 1.0) * (x - 2.0) * std::log2(x);
    case LowerBound::saf_cor: return kk * x / 6.0 * std::log2(x);
    case LowerBound::mxpj: return std::floor(x / 3.0 - 1.0) * (kk - 3.0) * std::log2(x);
    case LowerBound::mxpj_cor: return x * kk / 16.0 * std::log2(x);
    }
    return 0.0;
}

std::string_view to_string(Chain c) noexcept
{
    switch (c) {
    case Chain::hi_n: return "hi-n";
    case Chain::hi_p: return "hi-p";
    case Chain::hi_q: return "hi-q";
    case Chain::s5_obdd: return "s5-obdd";
    case Chain::s5_nobdd: return "s5-nobdd";
    case Chain::s5_pobdd: return "s5-pobdd";
    case Chain::h_kobdd: return "h-kobdd";
    }
    return "unknown";
}

std::vector<Chain> all_chains()
{
    return {Chain::hi_n, Chain::hi_p, Chain::hi_q, Chain::s5_obdd, Chain::s5_nobdd, Chain::s5_pobdd, Chain::h_kobdd};
}

Chain chain_from_string(std::string_view name)
{
    for (Chain c : all_chains()) {
        if (to_string(c) == name) { return c; }
    }
    throw std::invalid_argument("unknown chain '" + std::string(name) +
                                "' (expected hi-n, hi-p, hi-q, s5-obdd, s5-nobdd, s5-pobdd or h-kobdd)");
}

bool BoundReport::steps_consistent() const
{
    for (std::size_t i = 1; i < steps.size(); ++i) {
        double const prev = steps[i - 1].value;
        double const cur = steps[i].value;
        double const slack = 1e-9 * std::max({1.0, std::abs(prev), std::abs(cur)});
        if (steps[i].relation == "=") {
            if (std::abs(prev - cur) > slack) { return false; }
        } else if (cur > prev + slack) {
            return false;
        }
    }
    return true;
}

namespace {

void require_width(Chain chain, double reduced)
{
    if (!(reduced >= 1.0)) {
        throw OutOfRegime(std::string(to_string(chain)) + ": reduced width " + std::to_string(reduced) +
                          " is below 1, parameters are outside the theorem's regime");
    }
}

void require(bool ok, Chain chain, char const* what)
{
    if (!ok) { throw OutOfRegime(std::string(to_string(chain)) + ": requires " + what); }
}

} // namespace

BoundReport check_chain(Chain chain, int k, int w_or_d, Constants const& constants)
{
    if (k < 1 || w_or_d < 1) { throw std::invalid_argument("chain parameters must be positive"); }

    BoundReport r;
    r.chain = chain;
    r.k = k;
    r.size = w_or_d;
    r.constants = constants;

    double const kk = k;
    double const x = w_or_d;
    double const lx = std::log2(x);
    auto step = [&](char const* rel, double v) { r.steps.push_back({rel, v}); };

    switch (chain) {
    case Chain::hi_n: {
        // SAF_{k,w} against 2k-layer nondeterministic programs of width sqrt(w)/2.
        require(w_or_d >= 8, chain, "w >= 8");
        double const sw = std::sqrt(x);
        r.reduced_width = sw / 2.0;
        require_width(chain, r.reduced_width);
        r.lhs_log2 = lower_log2(LowerBound::saf_cor, k, w_or_d);
        r.rhs_log2 = bound_log2(Model::nondet, 2.0 * kk, r.reduced_width, constants);
        r.margin = r.lhs_log2 - r.rhs_log2;
        step("=", r.margin);
        step("=", kk * x / 6.0 * lx - sw / 2.0 - x * (2.0 * kk - 1.0) / 4.0);
        step("=", sw / 2.0 * (kk * sw / 3.0 * lx - 1.0 - kk * sw + sw / 2.0));
        step("=", sw / 2.0 * (kk * sw / 3.0 * (lx - 3.0) + sw / 2.0 - 1.0));
        break;
    }
    case Chain::hi_p: {
        require(k >= 2 && w_or_d >= 2, chain, "k >= 2 and w >= 2");
        r.reduced_width = std::sqrt(x) / (std::log2(kk) * lx);
        require_width(chain, r.reduced_width);
        r.lhs_log2 = lower_log2(LowerBound::saf_cor, k, w_or_d);
        r.rhs_log2 = bound_log2(Model::prob, 2.0 * kk, r.reduced_width, constants);
        r.margin = r.lhs_log2 - r.rhs_log2;
        step("=", r.margin);
        r.constant_dependent = true;
        break;
    }
    case Chain::hi_q: {
        // MXPJ_{2k,d} against k-layer id-ordered quantum programs of width sqrt(d/(C1 k)).
        if (!(constants.c > 0.0) || !(constants.c1 > 0.0)) {
            throw std::invalid_argument("constants C and C1 must be positive");
        }
        double const c = constants.c;
        double const c1 = constants.c1;
        r.reduced_width = std::sqrt(x / (c1 * kk));
        require_width(chain, r.reduced_width);
        r.lhs_log2 = lower_log2(LowerBound::mxpj_cor, k, w_or_d);
        r.rhs_log2 = bound_log2(Model::quantum, kk, r.reduced_width, constants);
        r.margin = r.lhs_log2 - r.rhs_log2;
        step("=", r.margin);
        step("=", kk / 16.0 * (x * lx - 16.0 * c * kk * x / (2.0 * c1 * kk) * std::log2(x / (c1 * kk))));
        if (c1 == 8.0 * c) { step(">=", kk / 16.0 * std::log2(c1 * kk)); }
        r.constant_dependent = true;
        break;
    }
    case Chain::s5_obdd: {
        r.reduced_width = x / 32.0;
        require_width(chain, r.reduced_width);
        r.lhs_log2 = lower_log2(LowerBound::mxpj_cor, k, w_or_d);
        r.rhs_log2 = bound_log2(Model::det, kk, r.reduced_width, constants);
        r.margin = r.lhs_log2 - r.rhs_log2;
        step("=", r.margin);
        step(">=", kk * x / 16.0 * lx - 2.0 * std::log2(x / 32.0) * kk * x / 32.0);
        step("=", kk * x * (lx / 16.0 - 2.0 * (lx - 5.0) / 32.0));
        break;
    }
    case Chain::s5_nobdd: {
        require(w_or_d >= 2, chain, "d >= 2");
        r.reduced_width = std::sqrt(x * lx / 33.0);
        require_width(chain, r.reduced_width);
        double const ratio = std::sqrt(33.0 * x / lx); // d divided by the reduced width
        r.lhs_log2 = lower_log2(LowerBound::mxpj_cor, k, w_or_d);
        r.rhs_log2 = bound_log2(Model::nondet, kk, r.reduced_width, constants);
        r.margin = r.lhs_log2 - r.rhs_log2;
        step("=", r.margin);
        step(">=", kk * x / 16.0 * lx - 2.0 * (kk * x / ratio) * x / ratio);
        step("=", kk * x * (lx / 16.0 - 2.0 * x / (ratio * ratio)));
        break;
    }
    case Chain::s5_pobdd: {
        require(k >= 2, chain, "k >= 2");
        r.reduced_width = std::sqrt(x / std::log2(kk));
        require_width(chain, r.reduced_width);
        r.lhs_log2 = lower_log2(LowerBound::mxpj_cor, k, w_or_d);
        r.rhs_log2 = bound_log2(Model::prob, kk, r.reduced_width, constants);
        r.margin = r.lhs_log2 - r.rhs_log2;
        step("=", r.margin);
        r.constant_dependent = true;
        break;
    }
    case Chain::h_kobdd: {
        // SAF_{k,w} against 2k-layer deterministic programs of width floor(w/16) - 3.
        require(k >= 2 && w_or_d >= 64, chain, "k >= 2 and w >= 64");
        r.reduced_width = std::floor(x / 16.0) - 3.0;
        require_width(chain, r.reduced_width);
        r.lhs_log2 = lower_log2(LowerBound::saf, k, w_or_d);
        r.rhs_log2 = bound_log2(Model::det, 2.0 * kk, r.reduced_width, constants);
        r.margin = r.lhs_log2 - r.rhs_log2;
        step("=", r.margin);
        break;
    }
    }
    return r;
}

std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t exp) noexcept
{
    constexpr std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t result = 1;
    for (std::uint64_t i = 0; i < exp; ++i) {
        if (base != 0 && result > max / base) { return max; }
        result *= base;
    }
    return result;
}

EmpiricalBoundReport empirical_bound_check(Program const& p, TruthTable const& f, Constants const& constants)
{
    if (f.arity() != p.n) { throw std::invalid_argument("function and program disagree on n"); }
    EmpiricalBoundReport r;
    r.model = model_of(p.semantics);
    r.k = p.k;
    r.width = width(p);

    if (r.model == Model::quantum) {
        r.measure = "N^pi";
        r.subfunctions = n_theta(f, p.order);
    } else {
        r.measure = "N";
        r.subfunctions = n_min(f).count;
    }
    r.bound_log2 = bound_log2(r.model, r.k, r.width, constants);

    auto const w = static_cast<std::uint64_t>(r.width);
    auto const layers = static_cast<std::uint64_t>(r.k);
    switch (r.model) {
    case Model::det: r.exact_bound = saturating_pow(w, (layers - 1) * w + 1); break;
    case Model::nondet: r.exact_bound = saturating_pow(2, w * ((layers - 1) * w + 1)); break;
    default: break;
    }
    if (r.exact_bound) {
        r.holds = r.subfunctions <= *r.exact_bound;
    } else {
        r.holds = std::log2(static_cast<double>(r.subfunctions)) <= r.bound_log2;
    }
    return r;
}

} // namespace kobdd

#include "kobdd/semantics.hpp"

#include <stdexcept>

namespace kobdd {

namespace {

void require(Program const& p, Semantics sem, char const* what)
{
    if (p.semantics != sem) {
        throw std::invalid_argument(std::string(what) + " requires a " + std::string(to_string(sem)) +
                                    " program, got " + std::string(to_string(p.semantics)));
    }
}

void require_length(Program const& p, Assignment const& x)
{
    if (static_cast<int>(x.size()) != p.n) {
        throw std::invalid_argument("input has " + std::to_string(x.size()) + " bits, program expects " +
                                    std::to_string(p.n));
    }
}

bool accepting(Program const& p, int node)
{
    for (int a : p.accept) {
        if (a == node) { return true; }
    }
    return false;
}

} // namespace

bool eval_det(Program const& p, Assignment const& x)
{
    require(p, Semantics::deterministic, "eval_det");
    require_length(p, x);
    int node = p.initial;
    for (auto const& lv : p.levels) {
        auto const& map = std::get<DeterministicMap>(lv.select(x(lv.variable)));
        node = map.targets[static_cast<std::size_t>(node - 1)];
    }
    return accepting(p, node);
}

bool eval_nondet(Program const& p, Assignment const& x)
{
    require(p, Semantics::nondeterministic, "eval_nondet");
    require_length(p, x);
    std::vector<char> reach(static_cast<std::size_t>(p.levels.front().width_in) + 1, 0);
    reach[static_cast<std::size_t>(p.initial)] = 1;
    for (auto const& lv : p.levels) {
        std::vector<char> next(static_cast<std::size_t>(lv.width_out) + 1, 0);
        bool any = false;
        for (auto [from, to] : std::get<Relation>(lv.select(x(lv.variable))).pairs) {
            if (reach[static_cast<std::size_t>(from)]) {
                next[static_cast<std::size_t>(to)] = 1;
                any = true;
            }
        }
        if (!any) { return false; }
        reach = std::move(next);
    }
    for (int a : p.accept) {
        if (reach[static_cast<std::size_t>(a)]) { return true; }
    }
    return false;
}

Amplitudes final_amplitudes(Program const& p, Assignment const& x, AmplitudeObserver const& observe)
{
    require(p, Semantics::quantum, "final_amplitudes");
    require_length(p, x);
    int const w = p.levels.front().width_in;
    Amplitudes state(static_cast<std::size_t>(w), 0.0);
    Amplitudes next(state.size());
    state[static_cast<std::size_t>(p.initial - 1)] = 1.0;
    std::size_t step = 0;
    for (auto const& lv : p.levels) {
        auto const& u = std::get<UnitaryMatrix>(lv.select(x(lv.variable)));
        for (int r = 0; r < w; ++r) {
            std::complex<double> acc = 0.0;
            for (int c = 0; c < w; ++c) { acc += u(r, c) * state[static_cast<std::size_t>(c)]; }
            next[static_cast<std::size_t>(r)] = acc;
        }
        state.swap(next);
        if (observe) { observe(++step, state); }
    }
    return state;
}

Distribution final_distribution(Program const& p, Assignment const& x, DistributionObserver const& observe)
{
    require(p, Semantics::probabilistic, "final_distribution");
    require_length(p, x);
    Distribution dist(static_cast<std::size_t>(p.levels.front().width_in), 0.0);
    dist[static_cast<std::size_t>(p.initial - 1)] = 1.0;
    std::size_t step = 0;
    for (auto const& lv : p.levels) {
        auto const& m = std::get<StochasticMatrix>(lv.select(x(lv.variable)));
        Distribution next(static_cast<std::size_t>(lv.width_out), 0.0);
        for (int r = 0; r < m.rows; ++r) {
            double acc = 0.0;
            for (int c = 0; c < m.cols; ++c) { acc += m(r, c) * dist[static_cast<std::size_t>(c)]; }
            next[static_cast<std::size_t>(r)] = acc;
        }
        dist = std::move(next);
        if (observe) { observe(++step, dist); }
    }
    return dist;
}

double accept_prob(Program const& p, Assignment const& x)
{
    double prob = 0.0;
    if (p.semantics == Semantics::quantum) {
        Amplitudes v = final_amplitudes(p, x);
        for (int a : p.accept) { prob += std::norm(v[static_cast<std::size_t>(a - 1)]); }
    } else if (p.semantics == Semantics::probabilistic) {
        Distribution d = final_distribution(p, x);
        for (int a : p.accept) { prob += d[static_cast<std::size_t>(a - 1)]; }
    } else {
        throw std::invalid_argument("accept_prob requires a probabilistic or quantum program");
    }
    return prob;
}

double acceptance(Program const& p, Assignment const& x)
{
    switch (p.semantics) {
    case Semantics::deterministic: return eval_det(p, x) ? 1.0 : 0.0;
    case Semantics::nondeterministic: return eval_nondet(p, x) ? 1.0 : 0.0;
    default: return accept_prob(p, x);
    }
}

bool computes_bounded_error(Program const& p, FunctionOracle const& f, double eps)
{
    if (!(eps > 0.0 && eps <= 0.5)) { throw std::invalid_argument("eps must lie in (0, 1/2]"); }
    if (f.n != p.n) { throw std::invalid_argument("function and program disagree on n"); }
    if (p.n > kExhaustiveLimit) {
        throw std::invalid_argument("exhaustive check limited to n <= " + std::to_string(kExhaustiveLimit));
    }
    std::uint64_t const total = std::uint64_t{1} << p.n;
    for (std::uint64_t v = 0; v < total; ++v) {
        Assignment x = Assignment::from_index(static_cast<std::size_t>(p.n), v);
        double const prob = acceptance(p, x);
        if (f(x)) {
            if (prob < 0.5 + eps - kProbabilitySlack) { return false; }
        } else if (prob > 0.5 - eps + kProbabilitySlack) {
            return false;
        }
    }
    return true;
}

} // namespace kobdd

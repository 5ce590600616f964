#include "kobdd/program.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

namespace kobdd {

Assignment Assignment::from_string(std::string_view text)
{
    std::vector<std::uint8_t> bits;
    bits.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (c != '0' && c != '1') {
            throw std::invalid_argument("invalid character '" + std::string(1, c) + "' at position " +
                                        std::to_string(i) + " in bit string");
        }
        bits.push_back(c == '1' ? 1 : 0);
    }
    return Assignment(std::move(bits));
}

Assignment Assignment::from_index(std::size_t n, std::uint64_t value)
{
    Assignment x(n);
    for (std::size_t i = 0; i < n && i < 64; ++i) { x.bits_[i] = (value >> i) & 1U; }
    return x;
}

std::string Assignment::to_string() const
{
    std::string s(bits_.size(), '0');
    for (std::size_t i = 0; i < bits_.size(); ++i) {
        if (bits_[i]) { s[i] = '1'; }
    }
    return s;
}

std::uint64_t Assignment::to_index() const
{
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < bits_.size() && i < 64; ++i) {
        if (bits_[i]) { v |= std::uint64_t{1} << i; }
    }
    return v;
}

VariableOrder VariableOrder::identity(int n)
{
    VariableOrder o;
    o.perm.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) { o.perm[static_cast<std::size_t>(i)] = i + 1; }
    return o;
}

bool VariableOrder::is_permutation() const
{
    std::vector<char> seen(perm.size() + 1, 0);
    for (int v : perm) {
        if (v < 1 || v > size() || seen[static_cast<std::size_t>(v)]) { return false; }
        seen[static_cast<std::size_t>(v)] = 1;
    }
    return true;
}

std::vector<int> VariableOrder::inverse() const
{
    std::vector<int> inv(perm.size() + 1, 0);
    for (std::size_t i = 0; i < perm.size(); ++i) { inv[static_cast<std::size_t>(perm[i])] = static_cast<int>(i) + 1; }
    return inv;
}

std::string_view to_string(Semantics s) noexcept
{
    switch (s) {
    case Semantics::deterministic: return "deterministic";
    case Semantics::nondeterministic: return "nondeterministic";
    case Semantics::probabilistic: return "probabilistic";
    case Semantics::quantum: return "quantum";
    }
    return "unknown";
}

Semantics semantics_from_string(std::string_view tag)
{
    for (auto s : {Semantics::deterministic, Semantics::nondeterministic, Semantics::probabilistic,
                   Semantics::quantum}) {
        if (tag == to_string(s)) { return s; }
    }
    throw std::invalid_argument("unknown semantics tag '" + std::string(tag) + "'");
}

bool ValidationReport::has(std::string_view rule) const
{
    return std::any_of(violations.begin(), violations.end(), [&](Violation const& v) { return v.rule == rule; });
}

std::string ValidationReport::summary() const
{
    if (ok()) { return "ok"; }
    std::ostringstream os;
    for (auto const& v : violations) { os << v.rule << ": " << v.detail << '\n'; }
    return os.str();
}

double unitarity_defect(UnitaryMatrix const& u)
{
    if (u.rows != u.cols) { return INFINITY; }
    int const w = u.rows;
    double sum = 0.0;
    for (int i = 0; i < w; ++i) {
        for (int j = 0; j < w; ++j) {
            std::complex<double> acc = 0.0;
            for (int r = 0; r < w; ++r) { acc += std::conj(u(r, i)) * u(r, j); }
            if (i == j) { acc -= 1.0; }
            sum += std::norm(acc);
        }
    }
    return std::sqrt(sum);
}

namespace {

class Checker {
public:
    explicit Checker(ValidationReport& report) : report_(report) {}

    void fail(std::string rule, std::string detail) { report_.violations.push_back({std::move(rule), std::move(detail)}); }

    void check_transition(Semantics sem, TransitionLevel const& lv, std::size_t index, char which)
    {
        Transition const& t = which == '0' ? lv.t0 : lv.t1;
        std::string const where = "level " + std::to_string(index + 1) + " t" + which;
        switch (sem) {
        case Semantics::deterministic: check_map(t, lv, where); break;
        case Semantics::nondeterministic: check_relation(t, lv, where); break;
        case Semantics::probabilistic: check_stochastic(t, lv, where); break;
        case Semantics::quantum: check_unitary(t, lv, where); break;
        }
    }

private:
    void check_map(Transition const& t, TransitionLevel const& lv, std::string const& where)
    {
        auto const* m = std::get_if<DeterministicMap>(&t);
        if (m == nullptr) { return fail("transition-kind", where + " is not a deterministic map"); }
        if (static_cast<int>(m->targets.size()) != lv.width_in) {
            return fail("total-map", where + " has " + std::to_string(m->targets.size()) + " entries, width_in is " +
                                         std::to_string(lv.width_in));
        }
        for (std::size_t s = 0; s < m->targets.size(); ++s) {
            int target = m->targets[s];
            if (target < 1 || target > lv.width_out) {
                return fail("total-map", where + " maps node " + std::to_string(s + 1) + " outside 1.." +
                                             std::to_string(lv.width_out));
            }
        }
    }

    void check_relation(Transition const& t, TransitionLevel const& lv, std::string const& where)
    {
        auto const* r = std::get_if<Relation>(&t);
        if (r == nullptr) { return fail("transition-kind", where + " is not a relation"); }
        for (auto [from, to] : r->pairs) {
            if (from < 1 || from > lv.width_in || to < 1 || to > lv.width_out) {
                return fail("relation-range", where + " has pair (" + std::to_string(from) + "," +
                                                  std::to_string(to) + ") out of range");
            }
        }
    }

    void check_stochastic(Transition const& t, TransitionLevel const& lv, std::string const& where)
    {
        auto const* m = std::get_if<StochasticMatrix>(&t);
        if (m == nullptr) { return fail("transition-kind", where + " is not a stochastic matrix"); }
        if (m->rows != lv.width_out || m->cols != lv.width_in) {
            return fail("dimension", where + " is " + std::to_string(m->rows) + "x" + std::to_string(m->cols) +
                                         ", expected " + std::to_string(lv.width_out) + "x" +
                                         std::to_string(lv.width_in));
        }
        for (int c = 0; c < m->cols; ++c) {
            double sum = 0.0;
            for (int r = 0; r < m->rows; ++r) {
                double v = (*m)(r, c);
                if (!(v >= 0.0)) {
                    return fail("stochastic", where + " has negative entry at (" + std::to_string(r + 1) + "," +
                                                  std::to_string(c + 1) + ")");
                }
                sum += v;
            }
            if (std::abs(sum - 1.0) > kStochasticTolerance) {
                return fail("stochastic", where + " column " + std::to_string(c + 1) + " sums to " +
                                              std::to_string(sum));
            }
        }
    }

    void check_unitary(Transition const& t, TransitionLevel const& lv, std::string const& where)
    {
        auto const* u = std::get_if<UnitaryMatrix>(&t);
        if (u == nullptr) { return fail("transition-kind", where + " is not a unitary matrix"); }
        if (lv.width_in != lv.width_out || u->rows != lv.width_in || u->cols != lv.width_in) {
            return fail("dimension", where + " must be square of size " + std::to_string(lv.width_in));
        }
        double defect = unitarity_defect(*u);
        if (!(defect <= kUnitaryTolerance)) {
            std::ostringstream os;
            os << where << " has ||U^dagger U - I||_F = " << defect;
            fail("unitary", os.str());
        }
    }

    ValidationReport& report_;
};

} // namespace

ValidationReport validate(Program const& p)
{
    ValidationReport report;
    Checker check(report);

    if (p.n < 1) { check.fail("parameters", "n must be positive"); }
    if (p.k < 1) { check.fail("parameters", "k must be positive"); }
    if (!report.ok()) { return report; }

    if (p.order.size() != p.n || !p.order.is_permutation()) {
        check.fail("order", "order is not a permutation of 1.." + std::to_string(p.n));
    }
    std::size_t const expected = static_cast<std::size_t>(p.k) * static_cast<std::size_t>(p.n);
    if (p.levels.size() != expected) {
        check.fail("level-count", "expected k*n = " + std::to_string(expected) + " levels, found " +
                                      std::to_string(p.levels.size()));
    }

    bool const order_ok = !report.has("order");
    for (std::size_t l = 0; l < p.levels.size(); ++l) {
        auto const& lv = p.levels[l];
        std::size_t const pos = l % static_cast<std::size_t>(p.n);
        if (order_ok && lv.variable != p.order.perm[pos]) {
            check.fail("same-order", "layer " + std::to_string(l / static_cast<std::size_t>(p.n) + 1) +
                                         " position " + std::to_string(pos + 1) + " reads x" +
                                         std::to_string(lv.variable) + ", order requires x" +
                                         std::to_string(p.order.perm[pos]));
        }
        if (lv.width_in < 1 || lv.width_out < 1) {
            check.fail("width", "level " + std::to_string(l + 1) + " has an empty node set");
            continue;
        }
        if (l + 1 < p.levels.size() && p.levels[l + 1].width_in != lv.width_out) {
            check.fail("width", "level " + std::to_string(l + 1) + " width_out " + std::to_string(lv.width_out) +
                                    " differs from next width_in " + std::to_string(p.levels[l + 1].width_in));
        }
        if (p.semantics == Semantics::quantum && (lv.width_in != p.levels.front().width_in ||
                                                  lv.width_out != p.levels.front().width_in)) {
            check.fail("quantum-width", "level " + std::to_string(l + 1) + " changes the quantum width");
        }
        check.check_transition(p.semantics, lv, l, '0');
        check.check_transition(p.semantics, lv, l, '1');
    }

    // Read-once per layer (implied by same-order on a permutation, checked independently).
    if (p.levels.size() == expected) {
        for (int layer = 0; layer < p.k; ++layer) {
            std::set<int> seen;
            for (int j = 0; j < p.n; ++j) {
                int var = p.levels[static_cast<std::size_t>(layer * p.n + j)].variable;
                if (var < 1 || var > p.n || !seen.insert(var).second) {
                    check.fail("read-once", "layer " + std::to_string(layer + 1) + " reads x" + std::to_string(var) +
                                                " twice or out of range");
                    break;
                }
            }
        }
    }

    if (!p.levels.empty()) {
        if (p.initial < 1 || p.initial > p.levels.front().width_in) {
            check.fail("initial", "initial node " + std::to_string(p.initial) + " outside 1.." +
                                      std::to_string(p.levels.front().width_in));
        }
        std::set<int> acc;
        for (int a : p.accept) {
            if (a < 1 || a > p.sink_width() || !acc.insert(a).second) {
                check.fail("accept", "accepting node " + std::to_string(a) + " invalid or repeated");
                break;
            }
        }
    }

    if (p.semantics == Semantics::probabilistic || p.semantics == Semantics::quantum) {
        if (!(p.epsilon > 0.0 && p.epsilon <= 0.5)) {
            check.fail("epsilon", "epsilon must lie in (0, 1/2]");
        }
    }
    return report;
}

int width(Program const& p)
{
    int w = 0;
    for (auto const& lv : p.levels) { w = std::max({w, lv.width_in, lv.width_out}); }
    return w;
}

} // namespace kobdd

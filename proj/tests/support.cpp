#include "support.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <set>
#include <stdexcept>
#include <unistd.h>

namespace kobdd::testing {

int uniform(Rng& rng, int lo, int hi)
{
    auto const span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(rng() % span);
}

double unit(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

Assignment random_assignment(Rng& rng, int n)
{
    Assignment x(static_cast<std::size_t>(n));
    for (int v = 1; v <= n; ++v) { x.set(v, (rng() & 1U) != 0); }
    return x;
}

namespace {

double gaussian(Rng& rng)
{
    double const u1 = 1.0 - unit(rng);
    double const u2 = unit(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

} // namespace

UnitaryMatrix random_unitary(Rng& rng, int w)
{
    using C = std::complex<double>;
    std::vector<std::vector<C>> cols(static_cast<std::size_t>(w), std::vector<C>(static_cast<std::size_t>(w)));
    for (auto& col : cols) {
        for (auto& z : col) { z = C(gaussian(rng), gaussian(rng)); }
    }
    for (std::size_t j = 0; j < cols.size(); ++j) {
        for (std::size_t i = 0; i < j; ++i) {
            C dot{};
            for (std::size_t r = 0; r < cols[j].size(); ++r) { dot += std::conj(cols[i][r]) * cols[j][r]; }
            for (std::size_t r = 0; r < cols[j].size(); ++r) { cols[j][r] -= dot * cols[i][r]; }
        }
        double norm = 0.0;
        for (auto const& z : cols[j]) { norm += std::norm(z); }
        norm = std::sqrt(norm);
        for (auto& z : cols[j]) { z /= norm; }
    }
    UnitaryMatrix u(w, w);
    for (int c = 0; c < w; ++c) {
        for (int r = 0; r < w; ++r) { u(r, c) = cols[static_cast<std::size_t>(c)][static_cast<std::size_t>(r)]; }
    }
    return u;
}

StochasticMatrix random_stochastic(Rng& rng, int width_out, int width_in)
{
    StochasticMatrix m(width_out, width_in);
    for (int c = 0; c < width_in; ++c) {
        double sum = 0.0;
        for (int r = 0; r < width_out; ++r) {
            m(r, c) = 0.05 + unit(rng);
            sum += m(r, c);
        }
        for (int r = 0; r < width_out; ++r) { m(r, c) /= sum; }
    }
    return m;
}

namespace {

VariableOrder random_order(Rng& rng, int n)
{
    VariableOrder o = VariableOrder::identity(n);
    std::shuffle(o.perm.begin(), o.perm.end(), rng);
    return o;
}

Transition random_transition(Rng& rng, Semantics s, int w_in, int w_out)
{
    switch (s) {
    case Semantics::deterministic: {
        DeterministicMap m;
        for (int i = 0; i < w_in; ++i) { m.targets.push_back(uniform(rng, 1, w_out)); }
        return m;
    }
    case Semantics::nondeterministic: {
        Relation r;
        for (int a = 1; a <= w_in; ++a) {
            for (int b = 1; b <= w_out; ++b) {
                if (uniform(rng, 0, 9) < 3) { r.pairs.emplace_back(a, b); }
            }
        }
        return r;
    }
    case Semantics::probabilistic: return random_stochastic(rng, w_out, w_in);
    case Semantics::quantum: return random_unitary(rng, w_in);
    }
    return DeterministicMap{};
}

void finish(Rng& rng, Program& p)
{
    p.initial = uniform(rng, 1, p.levels.front().width_in);
    for (int a = 1; a <= p.sink_width(); ++a) {
        if (rng() & 1U) { p.accept.push_back(a); }
    }
    if (p.semantics == Semantics::probabilistic || p.semantics == Semantics::quantum) { p.epsilon = 0.25; }
}

} // namespace

Program random_program(Rng& rng, Semantics s, ProgramShape shape)
{
    Program p;
    p.semantics = s;
    p.n = shape.n;
    p.k = shape.k;
    p.order = random_order(rng, shape.n);
    int width = uniform(rng, 1, shape.max_width);
    for (int layer = 0; layer < shape.k; ++layer) {
        for (int v : p.order.perm) {
            TransitionLevel lv;
            lv.variable = v;
            lv.width_in = width;
            lv.width_out = s == Semantics::quantum ? width : uniform(rng, 1, shape.max_width);
            lv.t0 = random_transition(rng, s, lv.width_in, lv.width_out);
            lv.t1 = random_transition(rng, s, lv.width_in, lv.width_out);
            width = lv.width_out;
            p.levels.push_back(std::move(lv));
        }
    }
    finish(rng, p);
    return p;
}

Program random_reversible_program(Rng& rng, ProgramShape shape)
{
    Program p;
    p.semantics = Semantics::deterministic;
    p.n = shape.n;
    p.k = shape.k;
    p.order = random_order(rng, shape.n);
    int const width = uniform(rng, 1, shape.max_width);
    auto perm = [&] {
        DeterministicMap m;
        m.targets.resize(static_cast<std::size_t>(width));
        std::iota(m.targets.begin(), m.targets.end(), 1);
        std::shuffle(m.targets.begin(), m.targets.end(), rng);
        return m;
    };
    for (int layer = 0; layer < shape.k; ++layer) {
        for (int v : p.order.perm) { p.levels.push_back({v, width, width, perm(), perm()}); }
    }
    finish(rng, p);
    return p;
}

bool mxpj_reference(Assignment const& x, int k, int d)
{
    int t = 0;
    while ((1 << t) < d) { ++t; }
    std::string const bits = x.to_string();
    // Block (half, i, j) holds f_{half,i}(j), t bits, least significant first.
    auto read = [&](int half, int i, int j) {
        std::size_t const start = static_cast<std::size_t>(((half * k + i) * d + j) * t);
        int v = 0;
        for (int b = 0; b < t; ++b) {
            if (bits.at(start + static_cast<std::size_t>(b)) == '1') { v += 1 << b; }
        }
        return v;
    };
    int before = 0;
    int cur = 0;
    for (int step = 1; step <= 2 * k; ++step) {
        int const half = step % 2 == 1 ? 0 : 1;
        int const i = (step + 1) / 2 - 1;
        int const next = read(half, i, cur) ^ before;
        before = cur;
        cur = next;
    }
    int ones = 0;
    for (int b = 0; b < t; ++b) { ones += (cur >> b) & 1; }
    return ones % 2 == 1;
}

Assignment saf_witness(Rng& rng, SafLayout const& layout, bool positive)
{
    int const k = layout.k;
    int const w = layout.w;
    int const blocks = layout.blocks();
    Assignment x = random_assignment(rng, layout.n);

    // Chosen (step, address, value) triples following the recurrence.
    struct Target {
        int step;
        int address;
        int value;
    };
    std::vector<Target> targets;
    int prev = 0;
    for (int t = 0; t < k; ++t) {
        int const v1 = uniform(rng, 0, w - 1);
        int v2 = uniform(rng, 0, w - 1);
        if (t == k - 1) { v2 = positive ? uniform(rng, 1, w - 1) : 0; }
        targets.push_back({t, prev, v1});
        targets.push_back({t, v1 + w, v2});
        prev = v2;
    }

    std::vector<int> slots(static_cast<std::size_t>(blocks));
    std::iota(slots.begin(), slots.end(), 0);
    std::shuffle(slots.begin(), slots.end(), rng);

    auto write_field = [&](int p, int offset, int bits, int value) {
        for (int j = 0; j < bits; ++j) { x.set(layout.address_var(p, offset + j), ((value >> j) & 1) != 0); }
    };
    auto clashes = [&](int rk, int rw) {
        return std::any_of(targets.begin(), targets.end(), [&](Target const& tg) {
            return rk % k == tg.step && rw % (2 * w) == tg.address;
        });
    };

    for (int p = 0; p < blocks; ++p) {
        int rk = 0;
        int rw = 0;
        do {
            rk = static_cast<int>(rng() % (std::uint64_t{1} << layout.k_bits));
            rw = static_cast<int>(rng() % (std::uint64_t{1} << layout.w_bits));
        } while (clashes(rk, rw));
        write_field(p, 0, layout.k_bits, rk);
        write_field(p, layout.k_bits, layout.w_bits, rw);
    }

    for (std::size_t i = 0; i < targets.size(); ++i) {
        Target const& tg = targets[i];
        int const p = slots[i];
        write_field(p, 0, layout.k_bits, tg.step);
        write_field(p, layout.k_bits, layout.w_bits, tg.address);
        int ones = 0;
        for (int j = 0; j < layout.value_bits; ++j) { ones += x(layout.value_var(p, j)) ? 1 : 0; }
        int const delta = ((tg.value - ones % w) % w + w) % w;
        // Turn delta zeros into ones, or w - delta ones into zeros.
        int const zeros = layout.value_bits - ones;
        bool const raise = zeros >= delta;
        int todo = raise ? delta : w - delta;
        for (int j = 0; j < layout.value_bits && todo > 0; ++j) {
            int const var = layout.value_var(p, j);
            if (x(var) != raise) {
                x.set(var, raise);
                --todo;
            }
        }
    }
    return x;
}

std::uint64_t naive_subfunctions(TruthTable const& f, std::vector<int> const& fixed_vars)
{
    int const n = f.arity();
    std::vector<int> free_vars;
    for (int v = 1; v <= n; ++v) {
        if (std::find(fixed_vars.begin(), fixed_vars.end(), v) == fixed_vars.end()) { free_vars.push_back(v); }
    }
    std::set<std::string> seen;
    for (std::uint64_t a = 0; a < (std::uint64_t{1} << fixed_vars.size()); ++a) {
        std::string row;
        for (std::uint64_t b = 0; b < (std::uint64_t{1} << free_vars.size()); ++b) {
            std::uint64_t index = 0;
            for (std::size_t i = 0; i < fixed_vars.size(); ++i) {
                if ((a >> i) & 1U) { index |= std::uint64_t{1} << (fixed_vars[i] - 1); }
            }
            for (std::size_t i = 0; i < free_vars.size(); ++i) {
                if ((b >> i) & 1U) { index |= std::uint64_t{1} << (free_vars[i] - 1); }
            }
            row += f[index] ? '1' : '0';
        }
        seen.insert(row);
    }
    return seen.size();
}

std::uint64_t factorial_n_min(TruthTable const& f)
{
    int const n = f.arity();
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 1);
    std::uint64_t best = ~std::uint64_t{0};
    do {
        std::uint64_t worst = 0;
        for (int u = 2; u < n; ++u) {
            std::vector<int> const prefix(perm.begin(), perm.begin() + u);
            worst = std::max(worst, naive_subfunctions(f, prefix));
        }
        best = std::min(best, worst);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

TruthTable random_table(Rng& rng, int n)
{
    TruthTable t(n);
    for (std::uint64_t i = 0; i < t.size(); ++i) { t.set(i, (rng() & 1U) != 0); }
    return t;
}

std::string temp_file(std::string const& stem, std::string const& text)
{
    static int counter = 0;
    auto const path = std::filesystem::temp_directory_path() /
                      ("kobdd_" + std::to_string(::getpid()) + "_" + std::to_string(counter++) + "_" + stem);
    std::ofstream(path, std::ios::binary) << text;
    return path.string();
}

} // namespace kobdd::testing

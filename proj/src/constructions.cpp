#include "kobdd/constructions.hpp"

#include <algorithm>
#include <map>
#include <tuple>

namespace kobdd {

// --- MXPJ -------------------------------------------------------------------

Program build_mxpj_id_obdd(int k, int d)
{
    check_mxpj_parameters(k, d);
    int const t = ceil_log2(d);
    int const n = 2 * k * d * t;
    int const w = d * d;

    Program p;
    p.semantics = Semantics::deterministic;
    p.n = n;
    p.k = k;
    p.order = VariableOrder::identity(n);
    p.initial = mxpj_node(d, 0, 0);

    DeterministicMap identity;
    identity.targets.resize(static_cast<std::size_t>(w));
    for (int s = 1; s <= w; ++s) { identity.targets[static_cast<std::size_t>(s - 1)] = s; }

    p.levels.reserve(static_cast<std::size_t>(k) * n);
    for (int layer = 1; layer <= k; ++layer) {
        for (int var = 1; var <= n; ++var) {
            int const block = (var - 1) / t;
            int const bit = (var - 1) % t;
            int const j = block % d;
            int const fn = block / d; // 0..2k-1: f_{A,1..k} then f_{B,1..k}
            int const half = fn / k;
            int const i = fn % k + 1;

            TransitionLevel lv{var, w, w, identity, identity};
            if (i == layer) {
                auto& flip = std::get<DeterministicMap>(lv.t1).targets;
                for (int u = 0; u < d; ++u) {
                    for (int v = 0; v < d; ++v) {
                        int const from = mxpj_node(d, u, v) - 1;
                        if (half == 0 && v == j) {
                            flip[static_cast<std::size_t>(from)] = mxpj_node(d, u ^ (1 << bit), v);
                        } else if (half == 1 && u == j) {
                            flip[static_cast<std::size_t>(from)] = mxpj_node(d, u, v ^ (1 << bit));
                        }
                    }
                }
            }
            p.levels.push_back(std::move(lv));
        }
    }

    for (int u = 0; u < d; ++u) {
        for (int v = 0; v < d; ++v) {
            if (parity(static_cast<unsigned>(v))) { p.accept.push_back(mxpj_node(d, u, v)); }
        }
    }
    return p;
}

// --- SAF --------------------------------------------------------------------

namespace {

struct SafState {
    enum class Kind { dead, search, found, done };

    Kind kind = Kind::dead;
    /// Pointer (search), partial sum (found) or looked-up value (done).
    int value = 0;
    /// Search only: address suffixes still consistent with the bits read in
    /// the current address field; empty once the block cannot match.
    std::vector<int> suffixes;

    auto key() const { return std::tie(kind, value, suffixes); }
    bool operator<(SafState const& o) const { return key() < o.key(); }
};

class SafMachine {
public:
    explicit SafMachine(SafLayout const& layout) : l_(layout) {}

    SafState initial() const { return search(0, 0); }

    /// Node reached after reading `bit` at 0-based position `pos` of layer `layer`.
    SafState advance(SafState s, int layer, int pos, bool bit) const
    {
        int const step = layer / 2;
        if (pos < l_.covered_vars()) {
            int const off = pos % l_.block_len;
            if (off < l_.address_bits()) {
                if (s.kind == SafState::Kind::search && !s.suffixes.empty()) {
                    s.suffixes = filter(s.suffixes, bit);
                    if (!s.suffixes.empty()) {
                        if (off == l_.address_bits() - 1) {
                            s = SafState{SafState::Kind::found, 0, {}};
                        } else if (off == l_.k_bits - 1) {
                            s.suffixes = slot_candidates(target_slot(layer, s.value));
                        }
                    }
                }
            } else {
                if (s.kind == SafState::Kind::found && bit) { s.value = (s.value + 1) % l_.w; }
                if (off == l_.block_len - 1) {
                    if (s.kind == SafState::Kind::found) {
                        s.kind = SafState::Kind::done;
                    } else if (s.kind == SafState::Kind::search) {
                        s = search(step, s.value, layer);
                    }
                }
            }
        }
        if (pos == l_.n - 1) { s = finish_layer(s, layer); }
        return s;
    }

    bool accepts(SafState const& s) const { return s.kind == SafState::Kind::done && s.value > 0; }

private:
    int target_slot(int layer, int pointer) const { return layer % 2 == 0 ? pointer : pointer + l_.w; }

    SafState search(int step, int pointer, int layer = 0) const
    {
        SafState s{SafState::Kind::search, pointer, {}};
        s.suffixes = l_.k_bits > 0 ? step_candidates(step) : slot_candidates(target_slot(layer, pointer));
        return s;
    }

    std::vector<int> step_candidates(int step) const
    {
        std::vector<int> out;
        for (int r = 0; r < (1 << l_.k_bits); ++r) {
            if (r % l_.k == step) { out.push_back(r); }
        }
        return out;
    }

    std::vector<int> slot_candidates(int slot) const
    {
        std::vector<int> out;
        for (int r = 0; r < (1 << l_.w_bits); ++r) {
            if (r % (2 * l_.w) == slot) { out.push_back(r); }
        }
        return out;
    }

    static std::vector<int> filter(std::vector<int> const& suffixes, bool bit)
    {
        std::vector<int> out;
        for (int sfx : suffixes) {
            if (((sfx & 1) != 0) == bit) { out.push_back(sfx >> 1); }
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    SafState finish_layer(SafState const& s, int layer) const
    {
        if (s.kind != SafState::Kind::done) { return SafState{}; }
        if (layer == 2 * l_.k - 1) { return s; }
        int const next = layer + 1;
        return search(next / 2, s.value, next);
    }

    SafLayout l_;
};

} // namespace

Program build_saf_2k_obdd(int k, int w, int n) { return build_saf_2k_obdd(SafLayout::make(k, w, n)); }

Program build_saf_2k_obdd(SafLayout const& layout)
{
    int const k = layout.k;
    int const n = layout.n;
    SafMachine const machine(layout);

    Program p;
    p.semantics = Semantics::deterministic;
    p.n = n;
    p.k = 2 * k;
    p.order = VariableOrder::identity(n);
    p.initial = 1;
    p.levels.reserve(static_cast<std::size_t>(p.k) * n);

    std::vector<SafState> current{machine.initial()};
    for (int layer = 0; layer < p.k; ++layer) {
        for (int pos = 0; pos < n; ++pos) {
            bool const last = layer == p.k - 1 && pos == n - 1;
            std::map<SafState, int> index;
            std::vector<SafState> next;
            auto intern = [&](SafState const& s) {
                if (last) { return machine.accepts(s) ? 2 : 1; }
                auto [it, inserted] = index.emplace(s, static_cast<int>(next.size()) + 1);
                if (inserted) { next.push_back(s); }
                return it->second;
            };

            TransitionLevel lv;
            lv.variable = pos + 1;
            lv.width_in = static_cast<int>(current.size());
            DeterministicMap t0;
            DeterministicMap t1;
            for (auto const& s : current) {
                t0.targets.push_back(intern(machine.advance(s, layer, pos, false)));
                t1.targets.push_back(intern(machine.advance(s, layer, pos, true)));
            }
            lv.width_out = last ? 2 : static_cast<int>(next.size());
            lv.t0 = std::move(t0);
            lv.t1 = std::move(t1);
            p.levels.push_back(std::move(lv));
            current = std::move(next);
        }
    }
    p.accept = {2};
    return p;
}

// --- embeddings ---------------------------------------------------------------

namespace {

void require_deterministic(Program const& p)
{
    if (p.semantics != Semantics::deterministic) {
        throw std::invalid_argument("embedding requires a deterministic program");
    }
}

} // namespace

Program compile_to_quantum(Program const& p)
{
    require_deterministic(p);
    Program q = p;
    q.semantics = Semantics::quantum;
    q.epsilon = 0.5;
    for (std::size_t l = 0; l < p.levels.size(); ++l) {
        auto const& lv = p.levels[l];
        if (lv.width_in != lv.width_out) {
            throw NonReversibleError(l + 1, "width changes from " + std::to_string(lv.width_in) + " to " +
                                                std::to_string(lv.width_out));
        }
        for (int b = 0; b < 2; ++b) {
            auto const& map = std::get<DeterministicMap>(lv.select(b == 1));
            UnitaryMatrix u(lv.width_in, lv.width_in);
            std::vector<char> hit(static_cast<std::size_t>(lv.width_in) + 1, 0);
            for (std::size_t s = 0; s < map.targets.size(); ++s) {
                int const target = map.targets[s];
                if (hit[static_cast<std::size_t>(target)]) {
                    throw NonReversibleError(l + 1, "x=" + std::to_string(b) + " maps two nodes to node " +
                                                        std::to_string(target));
                }
                hit[static_cast<std::size_t>(target)] = 1;
                u(target - 1, static_cast<int>(s)) = 1.0;
            }
            (b == 1 ? q.levels[l].t1 : q.levels[l].t0) = std::move(u);
        }
    }
    return q;
}

Program compile_to_nondet(Program const& p)
{
    require_deterministic(p);
    Program q = p;
    q.semantics = Semantics::nondeterministic;
    for (auto& lv : q.levels) {
        for (Transition* t : {&lv.t0, &lv.t1}) {
            auto const& map = std::get<DeterministicMap>(*t);
            Relation r;
            for (std::size_t s = 0; s < map.targets.size(); ++s) {
                r.pairs.emplace_back(static_cast<int>(s) + 1, map.targets[s]);
            }
            *t = std::move(r);
        }
    }
    return q;
}

Program compile_to_prob(Program const& p)
{
    require_deterministic(p);
    Program q = p;
    q.semantics = Semantics::probabilistic;
    q.epsilon = 0.5;
    for (auto& lv : q.levels) {
        for (Transition* t : {&lv.t0, &lv.t1}) {
            auto const& map = std::get<DeterministicMap>(*t);
            StochasticMatrix m(lv.width_out, lv.width_in);
            for (std::size_t s = 0; s < map.targets.size(); ++s) { m(map.targets[s] - 1, static_cast<int>(s)) = 1.0; }
            *t = std::move(m);
        }
    }
    return q;
}

} // namespace kobdd

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kobdd/program.hpp"
#include "kobdd/semantics.hpp"

namespace kobdd {

inline constexpr int kSubfunctionLimit = 16;

/// Full truth table of an n-variable function; entry i is f(x) for the
/// assignment with x_j = bit j-1 of i.
class TruthTable {
public:
    TruthTable() = default;
    explicit TruthTable(int n);

    static TruthTable from_function(FunctionOracle const& f);
    /// 2^n characters of '0'/'1', entry 0 first. Surrounding whitespace is ignored.
    static TruthTable from_string(std::string_view text);

    int arity() const noexcept { return n_; }
    std::uint64_t size() const noexcept { return std::uint64_t{1} << n_; }
    bool operator[](std::uint64_t index) const noexcept { return (words_[index >> 6] >> (index & 63)) & 1U; }
    void set(std::uint64_t index, bool value);
    std::string to_string() const;

private:
    int n_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Variable subset as a bit mask: bit j-1 stands for x_j.
using VarMask = std::uint32_t;

VarMask mask_of(std::vector<int> const& vars);

/// Number of distinct subfunctions f|rho over all assignments rho to the
/// variables in `subset_a`. Both sides of the cut must be nonempty.
std::uint64_t count_subfunctions_at_cut(TruthTable const& f, VarMask subset_a);

struct SubfunctionProfile {
    int n = 0;
    VariableOrder order;
    /// (u, count) for each cut 1 < u < n of the order.
    std::vector<std::pair<int, std::uint64_t>> cuts;
    /// N^theta(f): maximum over `cuts`.
    std::uint64_t max_count = 0;
    /// N(f), when the minimum over all orders was computed.
    std::optional<std::uint64_t> global_min;
};

/// Counts at every prefix cut 1 < u < n. Requires 3 <= n <= kSubfunctionLimit.
SubfunctionProfile profile(TruthTable const& f, VariableOrder const& order);

/// N^theta(f) = max over prefix cuts 1 < u < n of `order`.
std::uint64_t n_theta(TruthTable const& f, VariableOrder const& order);

struct MinOrderResult {
    std::uint64_t count = 0;
    /// An order attaining N(f).
    VariableOrder order;
};

/// N(f) = min over orders of N^theta(f), by a bottleneck shortest path over
/// the lattice of prefix sets (a cut's count depends only on the prefix set).
MinOrderResult n_min(TruthTable const& f);

} // namespace kobdd

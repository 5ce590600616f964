#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace kobdd {

/// Input to every evaluator: bits x_1..x_n, stored 0-indexed (bit(1) is x_1).
class Assignment {
public:
    Assignment() = default;
    explicit Assignment(std::size_t n) : bits_(n, 0) {}
    explicit Assignment(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {}

    /// Parses an ASCII string of '0'/'1' characters; the first character is x_1.
    static Assignment from_string(std::string_view text);

    /// Bit i-1 of `value` becomes x_i. This is the canonical enumeration order.
    static Assignment from_index(std::size_t n, std::uint64_t value);

    std::size_t size() const noexcept { return bits_.size(); }

    /// 1-based access, x_var.
    bool operator()(int var) const { return bits_[static_cast<std::size_t>(var - 1)] != 0; }
    void set(int var, bool value) { bits_[static_cast<std::size_t>(var - 1)] = value ? 1 : 0; }
    void flip(int var) { bits_[static_cast<std::size_t>(var - 1)] ^= 1; }

    std::vector<std::uint8_t> const& bits() const noexcept { return bits_; }
    std::string to_string() const;
    std::uint64_t to_index() const;

    bool operator==(Assignment const&) const = default;

private:
    std::vector<std::uint8_t> bits_;
};

/// A permutation (j_1, ..., j_n) of the 1-based variable indices.
struct VariableOrder {
    std::vector<int> perm;

    static VariableOrder identity(int n);

    int size() const noexcept { return static_cast<int>(perm.size()); }
    bool is_permutation() const;
    /// Position (1-based) at which `var` is read. Requires is_permutation().
    std::vector<int> inverse() const;

    bool operator==(VariableOrder const&) const = default;
};

/// Dense row-major matrix.
template <class T>
struct DenseMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<T> data;

    DenseMatrix() = default;
    DenseMatrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, T{}) {}

    static DenseMatrix identity(int w)
    {
        DenseMatrix m(w, w);
        for (int i = 0; i < w; ++i) { m(i, i) = T{1}; }
        return m;
    }

    T& operator()(int r, int c) { return data[static_cast<std::size_t>(r) * cols + c]; }
    T const& operator()(int r, int c) const { return data[static_cast<std::size_t>(r) * cols + c]; }

    bool operator==(DenseMatrix const&) const = default;
};

using StochasticMatrix = DenseMatrix<double>;
using UnitaryMatrix = DenseMatrix<std::complex<double>>;

/// Total map from {1..width_in} to {1..width_out}; targets[s-1] is the image of s.
struct DeterministicMap {
    std::vector<int> targets;
    bool operator==(DeterministicMap const&) const = default;
};

/// Edge relation on {1..width_in} x {1..width_out}.
struct Relation {
    std::vector<std::pair<int, int>> pairs;
    bool operator==(Relation const&) const = default;
};

using Transition = std::variant<DeterministicMap, Relation, StochasticMatrix, UnitaryMatrix>;

enum class Semantics { deterministic, nondeterministic, probabilistic, quantum };

std::string_view to_string(Semantics s) noexcept;
/// Throws std::invalid_argument for unknown tags.
Semantics semantics_from_string(std::string_view tag);

struct TransitionLevel {
    int variable = 1;
    int width_in = 1;
    int width_out = 1;
    Transition t0;
    Transition t1;

    Transition const& select(bool bit) const noexcept { return bit ? t1 : t0; }

    bool operator==(TransitionLevel const&) const = default;
};

/// Leveled oblivious k-layer branching program. Level l (0-based) maps the
/// nodes of V_{l+1} to V_{l+2}; the nodes reached after the last level are
/// the sinks, of which `accept` lists the accepting ones.
struct Program {
    Semantics semantics = Semantics::deterministic;
    int n = 0;
    int k = 0;
    VariableOrder order;
    std::vector<TransitionLevel> levels;
    int initial = 1;
    std::vector<int> accept;
    double epsilon = 0.0;

    int sink_width() const noexcept { return levels.empty() ? 0 : levels.back().width_out; }

    bool operator==(Program const&) const = default;
};

struct Violation {
    std::string rule;
    std::string detail;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const noexcept { return violations.empty(); }
    bool has(std::string_view rule) const;
    std::string summary() const;
};

inline constexpr double kStochasticTolerance = 1e-9;
inline constexpr double kUnitaryTolerance = 1e-9;

/// Checks every structural invariant; never throws.
ValidationReport validate(Program const& p);

/// Maximum node count over all levels including the sink level.
int width(Program const& p);

/// Frobenius norm of U^dagger U - I.
double unitarity_defect(UnitaryMatrix const& u);

} // namespace kobdd

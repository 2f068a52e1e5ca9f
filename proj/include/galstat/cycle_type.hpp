#pragma once

#include <compare>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace galstat {

/// A partition stored with parts sorted descending. Serves both as the
/// factorization type of a squarefree polynomial (factor degrees) and as the
/// cycle type of a permutation; Dedekind's correspondence identifies the two.
class CycleType {
public:
    CycleType() = default;
    /// Sorts `parts` descending. Throws InvalidArgument on a non-positive part.
    explicit CycleType(std::vector<int> parts);

    /// Parses the dash form produced by str(), e.g. "3-1-1".
    static CycleType parse(std::string_view text);
    /// [n].
    static CycleType full_cycle(int n) { return CycleType({n}); }
    /// [1^n].
    static CycleType identity(int n) { return CycleType(std::vector<int>(static_cast<std::size_t>(n), 1)); }
    /// [2, 1^{n-2}].
    static CycleType transposition(int n);

    std::span<const int> parts() const noexcept { return parts_; }
    int degree() const noexcept;
    std::size_t size() const noexcept { return parts_.size(); }
    /// +1 for even permutations, -1 for odd.
    int sign() const noexcept;
    std::string str() const;

    friend auto operator<=>(const CycleType&, const CycleType&) = default;

private:
    std::vector<int> parts_;
};

using FactorType = CycleType;

}  // namespace galstat

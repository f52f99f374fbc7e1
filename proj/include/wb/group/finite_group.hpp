#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace wb {

/// Permutation of {0..n-1}; perm[i] is the image of i.
using Perm = std::vector<std::uint8_t>;

/// Subsets of a group of order <= 64, one bit per element index.
using Mask = std::uint64_t;

inline constexpr std::size_t kDefaultOrderBound = 24;

/// A finite group given by its multiplication table. Element 0 is the
/// identity. Permutation groups keep their elements sorted lexicographically.
class FiniteGroup {
public:
    FiniteGroup() = default;

    /// Validates closure, associativity, identity and inverses (NotAGroup).
    static FiniteGroup from_table(std::string name, const std::vector<std::vector<std::size_t>>& table,
                                  std::size_t bound = kDefaultOrderBound);
    /// Closure of the generators; all must act on the same number of points.
    static FiniteGroup from_generators(std::string name, const std::vector<Perm>& gens,
                                       std::size_t bound = kDefaultOrderBound);

    const std::string& name() const { return name_; }
    std::size_t order() const { return mul_.size(); }
    std::size_t mul(std::size_t a, std::size_t b) const { return mul_[a][b]; }
    std::size_t inv(std::size_t a) const { return inv_[a]; }
    /// g^{-1} x g
    std::size_t conj(std::size_t x, std::size_t g) const { return mul_[mul_[inv_[g]][x]][g]; }
    std::size_t element_order(std::size_t a) const;
    bool is_abelian() const;

    bool is_permutation_group() const { return !perms_.empty(); }
    const std::vector<Perm>& permutations() const { return perms_; }
    /// Cycle notation for permutation groups ("()" for the identity),
    /// otherwise "g<i>".
    std::string element_name(std::size_t i) const;

    Mask all() const { return order() == 64 ? ~Mask(0) : ((Mask(1) << order()) - 1); }
    /// Smallest subgroup containing the given elements.
    Mask closure(Mask gens) const;
    /// {g^{-1} h g : h in H}
    Mask conjugate(Mask h, std::size_t g) const;
    bool is_subgroup(Mask h) const;

    /// The subgroup H as a group in its own right (elements in index order).
    FiniteGroup subgroup(Mask h, std::string name) const;
    /// Element indices of H in increasing order.
    static std::vector<std::size_t> elements_of(Mask h);

private:
    void set_name(std::string n) { name_ = std::move(n); }
    std::string name_;
    std::vector<std::vector<std::size_t>> mul_;
    std::vector<std::size_t> inv_;
    std::vector<Perm> perms_;
};

/// Builtins C<n>, D<n> (order 2n), S<n> (n <= 4), Q8, A4, or generators in
/// cycle notation such as "[(1 2 3 4),(1 3)]". Throws UnknownGroup,
/// ParseError, NotAGroup or OrderBoundExceeded. "G/label" subgroup
/// descriptors are resolved by GroupTables::resolve.
FiniteGroup build_group(const std::string& descriptor, std::size_t bound = kDefaultOrderBound);

/// Parses "(1 2 3)(4 5)" style products of cycles (1-based) into a
/// permutation on `degree` points (0 means: use the largest point).
Perm parse_cycles(const std::string& text, std::size_t degree = 0);

} // namespace wb

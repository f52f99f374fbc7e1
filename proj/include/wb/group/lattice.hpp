#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "wb/exact/number_theory.hpp"
#include "wb/exact/unitri_matrix.hpp"
#include "wb/group/finite_group.hpp"

namespace wb {

struct SubgroupClass {
    std::string label;
    Mask rep = 0;  // lexicographically least conjugate
    std::size_t order = 0;
    std::size_t index = 0;
    std::size_t normalizer_index = 0;  // (N_G(V):V)
    std::vector<Mask> conjugates;      // sorted by element list
};

/// Conjugacy classes of subgroups ordered by (index, element list of the
/// least conjugate). The whole group is class 0.
class SubgroupLattice {
public:
    explicit SubgroupLattice(const FiniteGroup& g);

    std::size_t size() const { return classes_.size(); }
    const SubgroupClass& operator[](std::size_t i) const { return classes_[i]; }
    const std::vector<SubgroupClass>& classes() const { return classes_; }
    std::vector<std::string> labels() const;

    /// Class of an arbitrary subgroup mask. Throws InvalidArgument.
    std::size_t class_of(Mask h) const;
    /// Class index by label, throws InvalidArgument.
    std::size_t find(const std::string& label) const;
    /// U is contained in some conjugate of V.
    bool subconjugate(std::size_t u, std::size_t v) const { return sub_[u][v]; }

private:
    std::vector<SubgroupClass> classes_;
    std::unordered_map<Mask, std::size_t> class_of_;
    std::vector<std::vector<bool>> sub_;
};

struct DoubleCoset {
    std::size_t rep;      // element index of g
    std::size_t z_class;  // class of V ∩ gWg^{-1}
    std::size_t size;
};

class GroupTables;
using TablesPtr = std::shared_ptr<const GroupTables>;

/// Everything derived from a finite group that the ring functors consume:
/// marks, their inverse, double-coset structure constants, subgroup views.
class GroupTables : public std::enable_shared_from_this<GroupTables> {
public:
    static TablesPtr build(FiniteGroup g);
    /// Accepts every build_group descriptor plus "<descriptor>/<label>"
    /// (a subgroup class of the parent, as a group of its own).
    /// Cached: equal descriptors give the same object.
    static TablesPtr resolve(const std::string& descriptor, std::size_t bound = kDefaultOrderBound);
    static TablesPtr resolve_uncached(const std::string& descriptor, std::size_t bound = kDefaultOrderBound);

    const FiniteGroup& group() const { return g_; }
    const SubgroupLattice& lattice() const { return lat_; }
    std::size_t size() const { return lat_.size(); }
    const SubgroupClass& cls(std::size_t i) const { return lat_[i]; }
    std::size_t index(std::size_t i) const { return lat_[i].index; }
    bool is_abelian() const { return abelian_; }

    /// phi_U(G/V): cosets of V fixed by (the representative of) U.
    const Integer& mark(std::size_t u, std::size_t v) const { return marks_[v][u]; }
    /// zeta(V,W) = phi_W(G/V), upper triangular in class order.
    const UniTriMatrix<Rational>& zeta() const { return zeta_; }
    const UniTriMatrix<Rational>& mobius() const { return mu_; }

    std::vector<DoubleCoset> double_cosets(std::size_t v, std::size_t w) const;
    /// Number of double cosets VgW with V ∩ gWg^{-1} in class u.
    long p(std::size_t v, std::size_t w, std::size_t u) const { return p_[(v * size() + w) * size() + u]; }
    /// (G:U) p / ((G:V)(G:W))
    Rational a(std::size_t v, std::size_t w, std::size_t u) const;
    /// Nonzero (v, w, value) for a fixed u, for product loops.
    struct Entry {
        std::size_t v, w;
        long p;
    };
    const std::vector<Entry>& p_entries(std::size_t u) const { return p_by_u_[u]; }

    /// Class u as a group of its own (labels local to it).
    TablesPtr subgroup_tables(std::size_t u) const;
    /// Local class of the subgroup -> fusing class of G.
    const std::vector<std::size_t>& ind_class_map(std::size_t u) const;
    /// U-orbits on G/V: (local class of the stabilizer, multiplicity).
    std::vector<std::pair<std::size_t, std::size_t>> res_orbit_data(std::size_t u, std::size_t v) const;

    /// Stable across runs: hash of the name and the class structure.
    std::string fingerprint() const;

private:
    explicit GroupTables(FiniteGroup g);

    FiniteGroup g_;
    SubgroupLattice lat_;
    bool abelian_;
    std::vector<std::vector<Integer>> marks_;  // [v][u]
    UniTriMatrix<Rational> zeta_, mu_;
    std::vector<long> p_;
    std::vector<std::vector<Entry>> p_by_u_;

    mutable std::mutex sub_mu_;
    mutable std::map<std::size_t, TablesPtr> sub_;
    mutable std::map<std::size_t, std::vector<std::size_t>> fusion_;
};

} // namespace wb

// Numerical unitary representations of finite groups.
//
// Irreducible representations are obtained by splitting the regular
// representation with a random element of its commutant; abelian groups use
// exact one-dimensional characters instead.

#ifndef STABREG_REPR_HPP_
#define STABREG_REPR_HPP_

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "stabreg/group.hpp"
#include "stabreg/subset.hpp"

namespace stabreg {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

// A homomorphism G -> U(n), one matrix per element index.
class UnitaryRep {
 public:
  // Snaps the identity's matrix to I and computes both residuals. Does not
  // reject large residuals; callers decide what is acceptable.
  UnitaryRep(GroupPtr group, std::vector<CMatrix> matrices,
             std::vector<std::size_t> components = {});

  static UnitaryRep trivial(GroupPtr group, std::size_t dim = 1);

  const GroupPtr& group() const noexcept { return group_; }
  std::size_t dim() const noexcept { return dim_; }
  const CMatrix& operator()(Element g) const { return matrices_[g]; }
  const std::vector<CMatrix>& matrices() const noexcept { return matrices_; }

  // max ||tau(ab) - tau(a)tau(b)||_op
  double hom_residual() const noexcept { return hom_residual_; }
  // max ||tau(g)^* tau(g) - I||_op
  double unitarity_residual() const noexcept { return unitarity_residual_; }

  // Labels of the irreducible summands (indices into the irrep list this rep
  // was assembled from). Empty when unknown.
  const std::vector<std::size_t>& components() const noexcept {
    return components_;
  }
  void set_components(std::vector<std::size_t> c) { components_ = std::move(c); }

  // True when every matrix is diagonal within `tol`.
  bool is_diagonal(double tol = 1e-8) const;

 private:
  GroupPtr group_;
  std::size_t dim_ = 0;
  std::vector<CMatrix> matrices_;
  double hom_residual_ = 0;
  double unitarity_residual_ = 0;
  std::vector<std::size_t> components_;
};

struct IrrepData {
  UnitaryRep rep;
  std::vector<Complex> character;
  int multiplicity_in_regular = 0;
};

// Largest singular value of M.
double operator_norm(const CMatrix& m);
// ||M - I||_op. For unitary M this lies in [0, 2].
double operator_distance(const CMatrix& m);

// Exhaustive over all pairs for |G| <= 64, 10^5 seeded random pairs above.
double hom_residual(const UnitaryRep& tau);
double unitarity_residual(const UnitaryRep& tau);

// (1/|G|) sum_g chi(g) conj(psi(g))
Complex character_inner(std::span<const Complex> chi,
                        std::span<const Complex> psi);
std::vector<Complex> character_of(const UnitaryRep& tau);

// All |G| characters of an abelian group, exact roots of unity. For Z/m the
// k-th character is x -> exp(2 pi i k x / m). Throws std::invalid_argument
// for nonabelian input.
std::vector<IrrepData> abelian_characters(const GroupPtr& group);

struct DecomposeOptions {
  std::uint64_t seed = 1;
  double tol = 1e-9;
  int max_retries = 5;
  // Relative eigenvalue gap below which eigenvalues are treated as equal.
  double cluster_gap = 1e-7;
};

inline constexpr std::size_t kDecomposeOrderCap = 256;

// Complete list of inequivalent irreducible representations, sorted by
// dimension (trivial first). Throws std::runtime_error if the split
// fails after all retries or residuals exceed tol.
std::vector<IrrepData> decompose_regular(const GroupPtr& group,
                                         const DecomposeOptions& opts = {});

// Changes each irrep's basis so that as many image matrices as possible are
// diagonal: the basis is taken from a Schur form of the image of a single
// element, chosen to maximize the number of diagonal images.
void make_diagonal_friendly(std::vector<IrrepData>& irreps,
                            double diag_tol = 1e-8);

// Exact characters for abelian groups, otherwise decompose_regular followed
// by make_diagonal_friendly.
std::vector<IrrepData> compute_irreps(const GroupPtr& group,
                                      std::uint64_t seed = 1);

// Block-diagonal combination. Components are concatenated.
UnitaryRep direct_sum_hom(std::span<const UnitaryRep> reps);

// Minimum dimension of an irrep with non-constant character, or nullopt for
// the trivial group.
std::optional<std::size_t> min_nontrivial_dim(
    std::span<const IrrepData> irreps);
std::optional<std::size_t> min_nontrivial_dim(const GroupPtr& group,
                                              std::uint64_t seed = 1);

// {g : ||tau(g) - I||_op <= tol}
Subset kernel(const UnitaryRep& tau, double tol = 1e-9);

// Text format: header "dim n order m", then for each element n lines each
// holding n "re im" pairs (row-major).
std::string format_rep(const UnitaryRep& tau);
UnitaryRep parse_rep(GroupPtr group, std::string_view text);

}  // namespace stabreg

#endif  // STABREG_REPR_HPP_

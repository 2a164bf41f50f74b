#pragma once

#include <complex>
#include <optional>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "subind/common.hpp"

// Finite-dimensional operator-algebra layer: full matrix algebras as objects,
// unital *-monomorphisms as embeddings, unital completely positive maps as
// operations.  The hom class is infinite here, so exhaustive search is
// replaced by constructive witnesses plus a feasibility semidecision.
//
// Complex matrices are Eigen::MatrixXcd throughout; serialized I/O fixes a
// row-major layout with interleaved real/imaginary decimal text.

namespace subind::opalg {

using Cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;

// Pinned numeric policy.  Validation guards object invariants, verification
// bounds residuals of exact algebraic identities (scaled by ambient dimension
// at the call site), feasibility governs the alternating-projection search.
inline constexpr double kValidationTol = 1e-9;
inline constexpr double kVerificationTol = 1e-10;
inline constexpr double kFeasibilityTol = 1e-8;
inline constexpr int kFeasibilityMaxIter = 10000;

inline double scaled_verification_tol(int ambient_dim) {
  return kVerificationTol * static_cast<double>(ambient_dim);
}

// Full algebra of n x n complex matrices.
struct MatrixAlgebra {
  int n;
  explicit MatrixAlgebra(int dim);
};

Mat matrix_unit(int n, int i, int j);
std::vector<Mat> matrix_units(int n);
Mat kron(const Mat& a, const Mat& b);
double op_norm(const Mat& a);

// Frobenius span utilities over complex matrices.  The basis keeps the
// first-seen orientation of the input, so downstream scans are deterministic.
std::vector<Mat> orthonormal_span(const std::vector<Mat>& span);
double span_distance(const std::vector<Mat>& basis, const Mat& x);

// Conditional expectations onto the canonical tensor factors of M_{p q}:
// the nearest a with x ~ a (x) I_q, respectively b with x ~ I_p (x) b.
Mat left_factor_compress(const Mat& x, int p, int q);
Mat right_factor_compress(const Mat& x, int p, int q);

// Unital completely positive map in Choi form.  Block (i, j) of the Choi
// matrix is the image of the (i, j) matrix unit of the source algebra; the
// Choi matrix must be Hermitian and positive semidefinite up to tol, and the
// diagonal blocks must sum to the identity up to tol.
class CPMap {
 public:
  static CPMap from_choi(int in_dim, int out_dim, Mat choi,
                         double tol = kValidationTol);
  static CPMap from_kraus(int in_dim, int out_dim, const std::vector<Mat>& kraus,
                          double tol = kValidationTol);
  static CPMap identity(int n);
  static CPMap depolarizing(int n);  // x -> tr(x) I / n

  int in_dim() const { return in_; }
  int out_dim() const { return out_; }
  const Mat& choi() const { return choi_; }
  Mat block(int i, int j) const;
  Mat apply(const Mat& x) const;
  double min_choi_eigenvalue() const;
  double unitality_defect() const;

 private:
  CPMap(int in_dim, int out_dim, Mat choi);
  int in_;
  int out_;
  Mat choi_;
};

// Rescales a Kraus family so that sum K K* = I; the rescaled family defines a
// unital completely positive map.  Throws when the normalizer is singular.
std::vector<Mat> unitalize(const std::vector<Mat>& kraus);

// Deterministic pseudo-random unital CP map with Gaussian Kraus operators.
CPMap random_unital_cp(int n, std::mt19937_64& rng, int kraus_count = 2);

// Choi form of alpha_a (x) alpha_b acting on the tensor-product algebra.
CPMap tensor_operation(const CPMap& alpha_a, const CPMap& alpha_b);

// Unital *-monomorphism between full matrix algebras, a -> U (a (x) I_mult) U*.
// Every unital embedding of M_n into M_{n k} has this form.
class StarMono {
 public:
  StarMono(int src_dim, int mult, Mat u, double tol = kValidationTol);
  static StarMono canonical_left(int n_a, int n_b);   // a -> a (x) I
  static StarMono canonical_right(int n_a, int n_b);  // b -> I (x) b

  int src_dim() const { return src_; }
  int mult() const { return mult_; }
  int dst_dim() const { return src_ * mult_; }
  const Mat& u() const { return u_; }
  Mat apply(const Mat& a) const;
  Mat compress(const Mat& x) const;  // left inverse of apply on the image
  std::vector<Mat> image_units() const;

 private:
  int src_;
  int mult_;
  Mat u_;
};

// Diagrammatic composition: first f, then g.
StarMono compose(const StarMono& f, const StarMono& g);

struct ExtensionCheck {
  bool ok = false;
  double residual = 0.0;  // max operator-norm deviation over matrix units
};

// Checks gamma(f(e)) = f(alpha(e)) on a matrix-unit basis of each embedded
// algebra; an extension restricts to the given operations on both images.
ExtensionCheck verify_extension(const CPMap& gamma, const StarMono& f_a,
                                const StarMono& f_b, const CPMap& alpha_a,
                                const CPMap& alpha_b, double tol);

enum class FeasibilityStatus { Found, Unknown };

struct FeasibilityParams {
  double tol = kFeasibilityTol;
  int max_iter = kFeasibilityMaxIter;
};

// Outcome of the joint-extension search.  Found certifies existence (the
// extension is re-verified before being returned); Unknown never claims
// non-existence.  affine_floor is the least-squares infeasibility of the
// restriction-plus-unitality system alone: a strictly positive floor proves
// that even the linear part of the constraints is contradictory.
struct FeasibilityResult {
  FeasibilityStatus status = FeasibilityStatus::Unknown;
  std::optional<CPMap> extension;
  double constraint_residual = 0.0;  // entrywise residual at the last iterate
  double verify_residual = 0.0;      // operator-norm residual when Found
  double affine_floor = 0.0;
  int iterations = 0;
};

// Alternating projections between the positive-semidefinite cone and the
// affine set encoding unitality plus both restriction constraints, on the
// Choi matrix of the candidate extension.
FeasibilityResult search_joint_extension(const StarMono& f_a, const StarMono& f_b,
                                         const CPMap& alpha_a, const CPMap& alpha_b,
                                         const MatrixAlgebra& ambient,
                                         const FeasibilityParams& params = {});

// True when gamma multiplies across the two images: gamma(f_a(x) f_b(y)) =
// gamma(f_a(x)) gamma(f_b(y)) on a product basis.  Requires gamma to be a
// joint extension of some pair of operations (equivalently, to map each image
// into itself compatibly); anything else is a precondition violation.
bool is_product_extension(const CPMap& gamma, const StarMono& f_a,
                          const StarMono& f_b, double tol);

// Decides whether two commuting unital *-subalgebras, given by spanning sets,
// sit inside the ambient algebra as conjugated tensor factors.  Returns the
// conjugating unitary u with u A u* = M_p (x) I and u B u* = I (x) M_q when
// the dimension conditions hold and the reconstruction verifies; otherwise
// absent.  Success makes the ambient an injective envelope for the pair, so
// joint extensions always exist.
std::optional<Mat> detect_tensor_factorization(const std::vector<Mat>& span_a,
                                               const std::vector<Mat>& span_b,
                                               const MatrixAlgebra& ambient,
                                               double tol = kValidationTol);

// Joint extension transported through a factorization certificate: conjugate
// by u, apply alpha (x) beta on the straightened factors, conjugate back.
// The operations are pulled through the embeddings, so the result restricts
// to alpha on image(f_a) and beta on image(f_b) whenever u actually conjugates
// the two images onto the canonical factors.
CPMap conjugated_tensor_extension(const Mat& u, const StarMono& f_a,
                                  const StarMono& f_b, const CPMap& alpha,
                                  const CPMap& beta);

}  // namespace subind::opalg

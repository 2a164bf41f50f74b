#include "subind/opalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <utility>

namespace subind::opalg {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

Mat hermitize(const Mat& a) { return 0.5 * (a + a.adjoint()); }

// Frobenius inner product <x, y> = tr(x* y), linear in y.
Cplx frob_ip(const Mat& x, const Mat& y) { return (x.adjoint() * y).trace(); }

}  // namespace

MatrixAlgebra::MatrixAlgebra(int dim) : n(dim) {
  if (dim < 1) throw DomainError("algebra dimension must be positive");
}

Mat matrix_unit(int n, int i, int j) {
  if (n < 1 || i < 0 || j < 0 || i >= n || j >= n)
    throw DomainError("matrix unit index out of range");
  Mat e = Mat::Zero(n, n);
  e(i, j) = Cplx(1.0, 0.0);
  return e;
}

std::vector<Mat> matrix_units(int n) {
  std::vector<Mat> units;
  units.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) units.push_back(matrix_unit(n, i, j));
  return units;
}

Mat kron(const Mat& a, const Mat& b) {
  Mat k(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      k.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return k;
}

double op_norm(const Mat& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0.0;
  Eigen::JacobiSVD<Mat> svd(a);
  return svd.singularValues()(0);
}

CPMap::CPMap(int in_dim, int out_dim, Mat choi)
    : in_(in_dim), out_(out_dim), choi_(std::move(choi)) {}

CPMap CPMap::from_choi(int in_dim, int out_dim, Mat choi, double tol) {
  if (in_dim < 1 || out_dim < 1) throw DomainError("map dimensions must be positive");
  const Eigen::Index d = static_cast<Eigen::Index>(in_dim) * out_dim;
  if (choi.rows() != d || choi.cols() != d)
    throw DomainError("choi matrix has the wrong size");
  const double herm = op_norm(choi - choi.adjoint());
  if (herm > tol)
    throw StructureError("choi matrix is not hermitian (defect " + fmt(herm) + ")");
  CPMap map(in_dim, out_dim, hermitize(choi));
  const double lo = map.min_choi_eigenvalue();
  if (lo < -tol)
    throw StructureError("choi matrix is not completely positive (minimum eigenvalue " +
                         fmt(lo) + ")");
  const double defect = map.unitality_defect();
  if (defect > tol)
    throw StructureError("map is not unital (identity defect " + fmt(defect) + ")");
  return map;
}

CPMap CPMap::from_kraus(int in_dim, int out_dim, const std::vector<Mat>& kraus,
                        double tol) {
  if (in_dim < 1 || out_dim < 1) throw DomainError("map dimensions must be positive");
  if (kraus.empty()) throw DomainError("kraus family is empty");
  for (const Mat& k : kraus)
    if (k.rows() != out_dim || k.cols() != in_dim)
      throw DomainError("kraus operator has the wrong size");
  Mat choi = Mat::Zero(static_cast<Eigen::Index>(in_dim) * out_dim,
                       static_cast<Eigen::Index>(in_dim) * out_dim);
  for (int i = 0; i < in_dim; ++i)
    for (int j = 0; j < in_dim; ++j) {
      Mat block = Mat::Zero(out_dim, out_dim);
      for (const Mat& k : kraus) block += k * matrix_unit(in_dim, i, j) * k.adjoint();
      choi.block(static_cast<Eigen::Index>(i) * out_dim,
                 static_cast<Eigen::Index>(j) * out_dim, out_dim, out_dim) = block;
    }
  return from_choi(in_dim, out_dim, std::move(choi), tol);
}

CPMap CPMap::identity(int n) {
  if (n < 1) throw DomainError("map dimensions must be positive");
  Mat choi = Mat::Zero(static_cast<Eigen::Index>(n) * n, static_cast<Eigen::Index>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      choi.block(static_cast<Eigen::Index>(i) * n, static_cast<Eigen::Index>(j) * n, n, n) =
          matrix_unit(n, i, j);
  return CPMap(n, n, std::move(choi));
}

CPMap CPMap::depolarizing(int n) {
  if (n < 1) throw DomainError("map dimensions must be positive");
  const Eigen::Index d = static_cast<Eigen::Index>(n) * n;
  return CPMap(n, n, Mat::Identity(d, d) / static_cast<double>(n));
}

Mat CPMap::block(int i, int j) const {
  if (i < 0 || j < 0 || i >= in_ || j >= in_)
    throw DomainError("choi block index out of range");
  return choi_.block(static_cast<Eigen::Index>(i) * out_,
                     static_cast<Eigen::Index>(j) * out_, out_, out_);
}

Mat CPMap::apply(const Mat& x) const {
  if (x.rows() != in_ || x.cols() != in_)
    throw DomainError("input has the wrong dimension");
  Mat y = Mat::Zero(out_, out_);
  for (int i = 0; i < in_; ++i)
    for (int j = 0; j < in_; ++j) y += x(i, j) * block(i, j);
  return y;
}

double CPMap::min_choi_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Mat> es(choi_, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

double CPMap::unitality_defect() const {
  Mat sum = Mat::Zero(out_, out_);
  for (int i = 0; i < in_; ++i) sum += block(i, i);
  return op_norm(sum - Mat::Identity(out_, out_));
}

std::vector<Mat> unitalize(const std::vector<Mat>& kraus) {
  if (kraus.empty()) throw DomainError("kraus family is empty");
  const Eigen::Index m = kraus.front().rows();
  Mat t = Mat::Zero(m, m);
  for (const Mat& k : kraus) {
    if (k.rows() != m) throw DomainError("kraus operators have mixed output dimensions");
    t += k * k.adjoint();
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(t);
  const double top = es.eigenvalues()(m - 1);
  if (es.eigenvalues()(0) <= 1e-12 * std::max(1.0, top))
    throw DomainError("kraus normalizer is singular");
  Mat root = Mat::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    root += (1.0 / std::sqrt(es.eigenvalues()(i))) * es.eigenvectors().col(i) *
            es.eigenvectors().col(i).adjoint();
  std::vector<Mat> out;
  out.reserve(kraus.size());
  for (const Mat& k : kraus) out.push_back(root * k);
  return out;
}

CPMap random_unital_cp(int n, std::mt19937_64& rng, int kraus_count) {
  if (n < 1) throw DomainError("map dimensions must be positive");
  if (kraus_count < 1) throw DomainError("kraus family is empty");
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<Mat> kraus;
  kraus.reserve(static_cast<std::size_t>(kraus_count));
  for (int k = 0; k < kraus_count; ++k) {
    Mat g(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const double re = gauss(rng);
        const double im = gauss(rng);
        g(i, j) = Cplx(re, im) / std::sqrt(2.0);
      }
    kraus.push_back(std::move(g));
  }
  return CPMap::from_kraus(n, n, unitalize(kraus));
}

CPMap tensor_operation(const CPMap& alpha_a, const CPMap& alpha_b) {
  const int na = alpha_a.in_dim(), ma = alpha_a.out_dim();
  const int nb = alpha_b.in_dim(), mb = alpha_b.out_dim();
  const int in = na * nb, out = ma * mb;
  Mat choi(static_cast<Eigen::Index>(in) * out, static_cast<Eigen::Index>(in) * out);
  for (int i = 0; i < na; ++i)
    for (int k = 0; k < nb; ++k)
      for (int j = 0; j < na; ++j)
        for (int l = 0; l < nb; ++l) {
          const Eigen::Index p = static_cast<Eigen::Index>(i) * nb + k;
          const Eigen::Index q = static_cast<Eigen::Index>(j) * nb + l;
          choi.block(p * out, q * out, out, out) =
              kron(alpha_a.block(i, j), alpha_b.block(k, l));
        }
  return CPMap::from_choi(in, out, std::move(choi));
}

StarMono::StarMono(int src_dim, int mult, Mat u, double tol)
    : src_(src_dim), mult_(mult), u_(std::move(u)) {
  if (src_ < 1 || mult_ < 1) throw DomainError("embedding dimensions must be positive");
  const Eigen::Index n = static_cast<Eigen::Index>(src_) * mult_;
  if (u_.rows() != n || u_.cols() != n)
    throw DomainError("conjugating matrix has the wrong size");
  const double defect = op_norm(u_.adjoint() * u_ - Mat::Identity(n, n));
  if (defect > tol)
    throw StructureError("conjugating matrix is not unitary (defect " + fmt(defect) + ")");
  // Unitarity already forces the action to be a unital *-homomorphism; the
  // sweep below is cheap insurance against a misassembled conjugator.
  double worst = op_norm(apply(Mat::Identity(src_, src_)) - Mat::Identity(n, n));
  for (int i = 0; i < src_ && worst <= 10.0 * tol; ++i)
    for (int j = 0; j < src_; ++j) {
      const Mat fij = apply(matrix_unit(src_, i, j));
      worst = std::max(worst, op_norm(fij.adjoint() - apply(matrix_unit(src_, j, i))));
      for (int k = 0; k < src_; ++k)
        for (int l = 0; l < src_; ++l) {
          const Mat prod = fij * apply(matrix_unit(src_, k, l));
          const Mat expect =
              j == k ? apply(matrix_unit(src_, i, l)) : Mat::Zero(n, n).eval();
          worst = std::max(worst, op_norm(prod - expect));
        }
    }
  if (worst > 10.0 * tol)
    throw StructureError("embedding does not act as a unital *-homomorphism");
}

StarMono StarMono::canonical_left(int n_a, int n_b) {
  if (n_a < 1 || n_b < 1) throw DomainError("embedding dimensions must be positive");
  const Eigen::Index n = static_cast<Eigen::Index>(n_a) * n_b;
  return StarMono(n_a, n_b, Mat::Identity(n, n));
}

StarMono StarMono::canonical_right(int n_a, int n_b) {
  if (n_a < 1 || n_b < 1) throw DomainError("embedding dimensions must be positive");
  const Eigen::Index n = static_cast<Eigen::Index>(n_a) * n_b;
  // Swap conjugator: u (b (x) I_{n_a}) u* = I_{n_a} (x) b.
  Mat u = Mat::Zero(n, n);
  for (int i = 0; i < n_b; ++i)
    for (int j = 0; j < n_a; ++j)
      u(static_cast<Eigen::Index>(j) * n_b + i, static_cast<Eigen::Index>(i) * n_a + j) =
          Cplx(1.0, 0.0);
  return StarMono(n_b, n_a, std::move(u));
}

Mat StarMono::apply(const Mat& a) const {
  if (a.rows() != src_ || a.cols() != src_)
    throw DomainError("input has the wrong dimension");
  return u_ * kron(a, Mat::Identity(mult_, mult_)) * u_.adjoint();
}

Mat StarMono::compress(const Mat& x) const {
  const Eigen::Index n = static_cast<Eigen::Index>(src_) * mult_;
  if (x.rows() != n || x.cols() != n)
    throw DomainError("input has the wrong dimension");
  const Mat y = u_.adjoint() * x * u_;
  Mat a = Mat::Zero(src_, src_);
  for (int p = 0; p < src_; ++p)
    for (int q = 0; q < src_; ++q) {
      Cplx acc(0.0, 0.0);
      for (int m = 0; m < mult_; ++m)
        acc += y(static_cast<Eigen::Index>(p) * mult_ + m,
                 static_cast<Eigen::Index>(q) * mult_ + m);
      a(p, q) = acc / static_cast<double>(mult_);
    }
  return a;
}

std::vector<Mat> StarMono::image_units() const {
  std::vector<Mat> images;
  images.reserve(static_cast<std::size_t>(src_) * static_cast<std::size_t>(src_));
  for (const Mat& e : matrix_units(src_)) images.push_back(apply(e));
  return images;
}

StarMono compose(const StarMono& f, const StarMono& g) {
  if (f.dst_dim() != g.src_dim()) throw DomainError("embeddings do not compose");
  const Mat u = g.u() * kron(f.u(), Mat::Identity(g.mult(), g.mult()));
  return StarMono(f.src_dim(), f.mult() * g.mult(), u);
}

ExtensionCheck verify_extension(const CPMap& gamma, const StarMono& f_a,
                                const StarMono& f_b, const CPMap& alpha_a,
                                const CPMap& alpha_b, double tol) {
  const int n = f_a.dst_dim();
  if (f_b.dst_dim() != n || gamma.in_dim() != n || gamma.out_dim() != n)
    throw DomainError("ambient dimensions do not match");
  if (alpha_a.in_dim() != f_a.src_dim() || alpha_a.out_dim() != f_a.src_dim() ||
      alpha_b.in_dim() != f_b.src_dim() || alpha_b.out_dim() != f_b.src_dim())
    throw DomainError("operation dimensions do not match their embeddings");
  double residual = 0.0;
  for (const Mat& e : matrix_units(f_a.src_dim()))
    residual = std::max(residual, op_norm(gamma.apply(f_a.apply(e)) -
                                          f_a.apply(alpha_a.apply(e))));
  for (const Mat& e : matrix_units(f_b.src_dim()))
    residual = std::max(residual, op_norm(gamma.apply(f_b.apply(e)) -
                                          f_b.apply(alpha_b.apply(e))));
  return ExtensionCheck{residual <= tol, residual};
}

namespace {

// Real parameterization of Hermitian d x d matrices: first the d real
// diagonal entries, then (re, im) pairs of the strict upper triangle in
// row-major order.  Off-diagonal slots carry a sqrt(2) weight so the map is
// an isometry onto the Frobenius metric; both projections of the feasibility
// iteration are then orthogonal in the same inner product.
struct HermCoords {
  static constexpr double kRt2 = 1.4142135623730951;

  Eigen::Index d;

  Eigen::Index size() const { return d * d; }

  Eigen::Index diag(Eigen::Index p) const { return p; }

  Eigen::Index upper(Eigen::Index p, Eigen::Index q) const {
    // pair index of (p, q), p < q, in row-major upper-triangle order
    return d + 2 * (p * d - p * (p + 1) / 2 + (q - p - 1));
  }

  Eigen::VectorXd to_coords(const Mat& j) const {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(size());
    for (Eigen::Index p = 0; p < d; ++p) {
      x(diag(p)) = j(p, p).real();
      for (Eigen::Index q = p + 1; q < d; ++q) {
        x(upper(p, q)) = kRt2 * j(p, q).real();
        x(upper(p, q) + 1) = kRt2 * j(p, q).imag();
      }
    }
    return x;
  }

  Mat to_matrix(const Eigen::VectorXd& x) const {
    Mat j(d, d);
    for (Eigen::Index p = 0; p < d; ++p) {
      j(p, p) = Cplx(x(diag(p)), 0.0);
      for (Eigen::Index q = p + 1; q < d; ++q) {
        j(p, q) = Cplx(x(upper(p, q)), x(upper(p, q) + 1)) / kRt2;
        j(q, p) = std::conj(j(p, q));
      }
    }
    return j;
  }

  // Adds coefficient c for the Choi entry (a, b) to the real/imaginary
  // constraint row pair, honoring J(b, a) = conj(J(a, b)).
  void add_coeff(Eigen::MatrixXd& rows, Eigen::Index row_re, Eigen::Index row_im,
                 Eigen::Index a, Eigen::Index b, Cplx c) const {
    if (a == b) {
      rows(row_re, diag(a)) += c.real();
      rows(row_im, diag(a)) += c.imag();
    } else if (a < b) {
      const Eigen::Index sre = upper(a, b), sim = sre + 1;
      rows(row_re, sre) += c.real() / kRt2;
      rows(row_re, sim) -= c.imag() / kRt2;
      rows(row_im, sre) += c.imag() / kRt2;
      rows(row_im, sim) += c.real() / kRt2;
    } else {
      const Eigen::Index sre = upper(b, a), sim = sre + 1;
      rows(row_re, sre) += c.real() / kRt2;
      rows(row_re, sim) += c.imag() / kRt2;
      rows(row_im, sre) += c.imag() / kRt2;
      rows(row_im, sim) -= c.real() / kRt2;
    }
  }
};

}  // namespace

FeasibilityResult search_joint_extension(const StarMono& f_a, const StarMono& f_b,
                                         const CPMap& alpha_a, const CPMap& alpha_b,
                                         const MatrixAlgebra& ambient,
                                         const FeasibilityParams& params) {
  const int n = ambient.n;
  if (f_a.dst_dim() != n || f_b.dst_dim() != n)
    throw DomainError("ambient dimensions do not match");
  if (alpha_a.in_dim() != f_a.src_dim() || alpha_a.out_dim() != f_a.src_dim() ||
      alpha_b.in_dim() != f_b.src_dim() || alpha_b.out_dim() != f_b.src_dim())
    throw DomainError("operation dimensions do not match their embeddings");
  if (params.tol <= 0.0 || params.max_iter < 1)
    throw DomainError("feasibility parameters must be positive");

  const Eigen::Index d = static_cast<Eigen::Index>(n) * n;  // Choi side length
  const HermCoords coords{d};
  const int na = f_a.src_dim(), nb = f_b.src_dim();
  const Eigen::Index eqs = static_cast<Eigen::Index>(na) * na +
                           static_cast<Eigen::Index>(nb) * nb + 1;
  const Eigen::Index rows = 2 * static_cast<Eigen::Index>(n) * n * eqs;
  Eigen::MatrixXd sys = Eigen::MatrixXd::Zero(rows, coords.size());
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(rows);

  Eigen::Index row = 0;
  auto add_restriction = [&](const StarMono& f, const CPMap& alpha) {
    for (const Mat& e : matrix_units(f.src_dim())) {
      const Mat m = f.apply(e);
      const Mat target = f.apply(alpha.apply(e));
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) {
          for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q) {
              const Cplx c = m(p, q);
              if (std::abs(c) < 1e-15) continue;
              coords.add_coeff(sys, row, row + 1,
                               static_cast<Eigen::Index>(p) * n + r,
                               static_cast<Eigen::Index>(q) * n + s, c);
            }
          rhs(row) = target(r, s).real();
          rhs(row + 1) = target(r, s).imag();
          row += 2;
        }
    }
  };
  add_restriction(f_a, alpha_a);
  add_restriction(f_b, alpha_b);
  for (int r = 0; r < n; ++r)
    for (int s = 0; s < n; ++s) {
      for (int p = 0; p < n; ++p)
        coords.add_coeff(sys, row, row + 1, static_cast<Eigen::Index>(p) * n + r,
                         static_cast<Eigen::Index>(p) * n + s, Cplx(1.0, 0.0));
      rhs(row) = r == s ? 1.0 : 0.0;
      rhs(row + 1) = 0.0;
      row += 2;
    }

  const Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(sys);
  Eigen::VectorXd x = cod.solve(rhs);
  FeasibilityResult result;
  result.verify_residual = std::numeric_limits<double>::infinity();
  result.affine_floor = (sys * x - rhs).lpNorm<Eigen::Infinity>();
  if (result.affine_floor > params.tol) {
    // The linear system alone is contradictory; no amount of iteration helps.
    result.constraint_residual = result.affine_floor;
    return result;
  }

  // Entrywise stop bound: an n x n residual matrix with entries below
  // tol / n has operator norm at most tol.  Plain alternation stalls when the
  // feasible extensions sit on the cone boundary, so the iteration uses the
  // reflected (Douglas-Rachford) combination of the same two projections and
  // reads the candidate off the cone-projected shadow.
  const double stop = params.tol / static_cast<double>(n);
  for (int it = 1; it <= params.max_iter; ++it) {
    Eigen::SelfAdjointEigenSolver<Mat> es(coords.to_matrix(x));
    Mat clipped = Mat::Zero(d, d);
    for (Eigen::Index k = 0; k < d; ++k) {
      const double lambda = es.eigenvalues()(k);
      if (lambda <= 0.0) continue;
      clipped += lambda * es.eigenvectors().col(k) * es.eigenvectors().col(k).adjoint();
    }
    const Eigen::VectorXd shadow = coords.to_coords(clipped);
    const double residual = (sys * shadow - rhs).lpNorm<Eigen::Infinity>();
    result.constraint_residual = residual;
    result.iterations = it;
    if (residual <= stop) {
      CPMap candidate =
          CPMap::from_choi(n, n, std::move(clipped), std::max(kValidationTol, params.tol));
      const ExtensionCheck check =
          verify_extension(candidate, f_a, f_b, alpha_a, alpha_b, params.tol);
      if (check.ok) {
        result.status = FeasibilityStatus::Found;
        result.extension = std::move(candidate);
        result.verify_residual = check.residual;
        return result;
      }
    }
    const Eigen::VectorXd reflected = 2.0 * shadow - x;
    x += reflected - cod.solve(sys * reflected - rhs) - shadow;
  }
  return result;
}

bool is_product_extension(const CPMap& gamma, const StarMono& f_a,
                          const StarMono& f_b, double tol) {
  const int n = f_a.dst_dim();
  if (f_b.dst_dim() != n || gamma.in_dim() != n || gamma.out_dim() != n)
    throw DomainError("ambient dimensions do not match");
  // Precondition: gamma restricts to an operation on each image.  The
  // compression through the embedding recovers that operation when it exists.
  for (const StarMono* f : {&f_a, &f_b}) {
    for (const Mat& e : matrix_units(f->src_dim())) {
      const Mat image = gamma.apply(f->apply(e));
      if (op_norm(f->apply(f->compress(image)) - image) > tol)
        throw DomainError("the map is not a joint extension over the embedded pair");
    }
  }
  const std::vector<Mat> img_a = f_a.image_units();
  const std::vector<Mat> img_b = f_b.image_units();
  double deviation = 0.0;
  for (const Mat& a : img_a)
    for (const Mat& b : img_b)
      deviation = std::max(
          deviation, op_norm(gamma.apply(a * b) - gamma.apply(a) * gamma.apply(b)));
  return deviation <= tol;
}

std::vector<Mat> orthonormal_span(const std::vector<Mat>& span) {
  std::vector<Mat> basis;
  for (const Mat& s : span) {
    Mat v = s;
    for (int pass = 0; pass < 2; ++pass)
      for (const Mat& b : basis) v -= frob_ip(b, v) * b;
    const double nrm = v.norm();
    if (nrm > 1e-10 * std::max(1.0, s.norm())) basis.push_back(v / nrm);
  }
  return basis;
}

double span_distance(const std::vector<Mat>& basis, const Mat& x) {
  Mat r = x;
  for (int pass = 0; pass < 2; ++pass)
    for (const Mat& b : basis) r -= frob_ip(b, r) * b;
  return r.norm();
}

Mat left_factor_compress(const Mat& x, int p, int q) {
  Mat a = Mat::Zero(p, p);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) {
      Cplx acc(0.0, 0.0);
      for (int m = 0; m < q; ++m)
        acc += x(static_cast<Eigen::Index>(i) * q + m,
                 static_cast<Eigen::Index>(j) * q + m);
      a(i, j) = acc / static_cast<double>(q);
    }
  return a;
}

Mat right_factor_compress(const Mat& x, int p, int q) {
  Mat b = Mat::Zero(q, q);
  for (int m = 0; m < q; ++m)
    for (int w = 0; w < q; ++w) {
      Cplx acc(0.0, 0.0);
      for (int i = 0; i < p; ++i)
        acc += x(static_cast<Eigen::Index>(i) * q + m,
                 static_cast<Eigen::Index>(i) * q + w);
      b(m, w) = acc / static_cast<double>(p);
    }
  return b;
}

namespace {

// Structural thresholds for the factorization detector.  They gate numeric
// rank and clustering decisions, not caller-facing tolerances.
constexpr double kSpanTol = 1e-8;
constexpr double kUnitTol = 1e-6;

void check_subalgebra(const std::vector<Mat>& basis, Eigen::Index n) {
  const Mat id = Mat::Identity(n, n);
  if (span_distance(basis, id) > kSpanTol * std::sqrt(static_cast<double>(n)))
    throw DomainError("spanning set does not contain the identity");
  for (const Mat& b : basis)
    if (span_distance(basis, b.adjoint()) > kSpanTol)
      throw DomainError("spanning set is not closed under adjoints");
  for (const Mat& b : basis)
    for (const Mat& c : basis)
      if (span_distance(basis, b * c) > kSpanTol * std::max(1.0, (b * c).norm()))
        throw DomainError("spanning set is not closed under products");
}

double left_factor_residual(const Mat& x, int p, int q) {
  return (x - kron(left_factor_compress(x, p, q), Mat::Identity(q, q))).norm();
}

double right_factor_residual(const Mat& x, int p, int q) {
  return (x - kron(Mat::Identity(p, p), right_factor_compress(x, p, q))).norm();
}

// Recovers a full system of matrix units for a subalgebra isomorphic to
// M_factor with uniform multiplicity, via spectral projections of a generic
// Hermitian element and polar partial isometries.
std::optional<std::vector<Mat>> recover_units(const std::vector<Mat>& basis,
                                              int factor, int mult, Eigen::Index n) {
  std::vector<Mat> herm;
  {
    std::vector<Mat> cands;
    for (const Mat& b : basis) {
      cands.push_back(hermitize(b));
      cands.push_back(Cplx(0.0, -0.5) * (b - b.adjoint()));
    }
    for (const Mat& c : cands) {
      Mat v = c;
      for (int pass = 0; pass < 2; ++pass)
        for (const Mat& h : herm) v -= frob_ip(h, v).real() * h;
      const double nrm = v.norm();
      if (nrm > 1e-10) herm.push_back(v / nrm);
    }
  }

  std::mt19937_64 rng(0x633a17c5u);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  for (int attempt = 0; attempt < 8; ++attempt) {
    Mat h = Mat::Zero(n, n);
    for (const Mat& hb : herm) h += coeff(rng) * hb;
    Eigen::SelfAdjointEigenSolver<Mat> es(hermitize(h));
    const double scale = std::max(1.0, std::abs(es.eigenvalues()(n - 1)));

    std::vector<std::pair<Eigen::Index, Eigen::Index>> clusters;
    Eigen::Index start = 0;
    for (Eigen::Index k = 1; k <= n; ++k)
      if (k == n || es.eigenvalues()(k) - es.eigenvalues()(k - 1) > 1e-6 * scale) {
        clusters.emplace_back(start, k - start);
        start = k;
      }
    if (static_cast<int>(clusters.size()) != factor) continue;
    bool uniform = true;
    for (const auto& [lo, len] : clusters) uniform = uniform && len == mult;
    if (!uniform) continue;

    std::vector<Mat> proj;
    bool inside = true;
    for (const auto& [lo, len] : clusters) {
      const Mat block = es.eigenvectors().middleCols(lo, len);
      proj.push_back(block * block.adjoint());
      inside = inside && span_distance(basis, proj.back()) <= 1e-6;
    }
    if (!inside) continue;

    std::vector<Mat> iso;  // iso[i]: partial isometry from proj[0] onto proj[i]
    iso.push_back(proj[0]);
    bool linked = true;
    for (int i = 1; i < factor && linked; ++i) {
      linked = false;
      for (const Mat& g : basis) {
        const Mat w = proj[static_cast<std::size_t>(i)] * g * proj[0];
        if (w.norm() <= 1e-6) continue;
        Eigen::JacobiSVD<Mat> svd(w, Eigen::ComputeThinU | Eigen::ComputeThinV);
        Eigen::Index rank = 0;
        while (rank < svd.singularValues().size() &&
               svd.singularValues()(rank) > 1e-6 * svd.singularValues()(0))
          ++rank;
        if (rank != mult) continue;
        const Mat u = svd.matrixU().leftCols(mult) * svd.matrixV().leftCols(mult).adjoint();
        if (op_norm(u.adjoint() * u - proj[0]) > kUnitTol) continue;
        if (op_norm(u * u.adjoint() - proj[static_cast<std::size_t>(i)]) > kUnitTol)
          continue;
        iso.push_back(u);
        linked = true;
        break;
      }
    }
    if (!linked) continue;

    std::vector<Mat> units(static_cast<std::size_t>(factor) * factor);
    for (int i = 0; i < factor; ++i)
      for (int j = 0; j < factor; ++j)
        units[static_cast<std::size_t>(i) * factor + j] =
            iso[static_cast<std::size_t>(i)] * iso[static_cast<std::size_t>(j)].adjoint();

    Mat total = Mat::Zero(n, n);
    double worst = 0.0;
    for (int i = 0; i < factor; ++i)
      total += units[static_cast<std::size_t>(i) * factor + i];
    worst = std::max(worst, (total - Mat::Identity(n, n)).norm());
    for (int i = 0; i < factor; ++i)
      for (int j = 0; j < factor; ++j) {
        const Mat& uij = units[static_cast<std::size_t>(i) * factor + j];
        worst = std::max(worst, span_distance(basis, uij));
        for (int k = 0; k < factor; ++k)
          for (int l = 0; l < factor; ++l) {
            const Mat prod = uij * units[static_cast<std::size_t>(k) * factor + l];
            const Mat expect = j == k ? units[static_cast<std::size_t>(i) * factor + l]
                                      : Mat::Zero(n, n).eval();
            worst = std::max(worst, (prod - expect).norm());
          }
      }
    if (worst > kUnitTol) continue;
    return units;
  }
  return std::nullopt;
}

}  // namespace

std::optional<Mat> detect_tensor_factorization(const std::vector<Mat>& span_a,
                                               const std::vector<Mat>& span_b,
                                               const MatrixAlgebra& ambient,
                                               double tol) {
  const Eigen::Index n = ambient.n;
  if (span_a.empty() || span_b.empty())
    throw DomainError("spanning set is empty");
  for (const std::vector<Mat>* span : {&span_a, &span_b})
    for (const Mat& s : *span)
      if (s.rows() != n || s.cols() != n)
        throw DomainError("spanning set element has the wrong dimension");

  const std::vector<Mat> basis_a = orthonormal_span(span_a);
  const std::vector<Mat> basis_b = orthonormal_span(span_b);
  check_subalgebra(basis_a, n);
  check_subalgebra(basis_b, n);

  for (const Mat& a : basis_a)
    for (const Mat& b : basis_b)
      if ((a * b - b * a).norm() > kSpanTol) return std::nullopt;

  const Eigen::Index da = static_cast<Eigen::Index>(basis_a.size());
  const Eigen::Index db = static_cast<Eigen::Index>(basis_b.size());
  if (da * db != n * n) return std::nullopt;
  Mat products(n * n, da * db);
  for (Eigen::Index i = 0; i < da; ++i)
    for (Eigen::Index j = 0; j < db; ++j) {
      const Mat p = basis_a[static_cast<std::size_t>(i)] * basis_b[static_cast<std::size_t>(j)];
      products.col(i * db + j) = Eigen::Map<const Eigen::VectorXcd>(p.data(), n * n);
    }
  Eigen::ColPivHouseholderQR<Mat> qr(products);
  qr.setThreshold(kSpanTol);
  if (qr.rank() != da * db) return std::nullopt;

  const int pa = static_cast<int>(std::llround(std::sqrt(static_cast<double>(da))));
  const int pb = static_cast<int>(std::llround(std::sqrt(static_cast<double>(db))));
  if (static_cast<Eigen::Index>(pa) * pa != da || static_cast<Eigen::Index>(pb) * pb != db)
    return std::nullopt;

  // Already in canonical position: the identity conjugates.
  {
    bool canonical = true;
    for (const Mat& s : span_a)
      canonical = canonical &&
                  left_factor_residual(s, pa, pb) <= kSpanTol * (1.0 + s.norm());
    for (const Mat& s : span_b)
      canonical = canonical &&
                  right_factor_residual(s, pa, pb) <= kSpanTol * (1.0 + s.norm());
    if (canonical) return Mat::Identity(n, n);
  }

  const auto units_a = recover_units(basis_a, pa, pb, n);
  const auto units_b = recover_units(basis_b, pb, pa, n);
  if (!units_a || !units_b) return std::nullopt;

  // Cyclic vector for the joint rank-one corner, phase-fixed at its largest
  // component.
  const Mat corner = hermitize((*units_a)[0] * (*units_b)[0]);
  Eigen::SelfAdjointEigenSolver<Mat> es(corner);
  if (std::abs(es.eigenvalues()(n - 1) - 1.0) > kUnitTol) return std::nullopt;
  if (n > 1 && es.eigenvalues()(n - 2) > 0.5) return std::nullopt;
  Eigen::VectorXcd xi = es.eigenvectors().col(n - 1);
  Eigen::Index peak = 0;
  for (Eigen::Index k = 1; k < n; ++k)
    if (std::abs(xi(k)) > std::abs(xi(peak))) peak = k;
  xi *= std::conj(xi(peak)) / std::abs(xi(peak));

  Mat w(n, n);
  for (int i = 0; i < pa; ++i)
    for (int k = 0; k < pb; ++k)
      w.col(static_cast<Eigen::Index>(i) * pb + k) =
          (*units_a)[static_cast<std::size_t>(i) * pa] *
          ((*units_b)[static_cast<std::size_t>(k) * pb] * xi);
  if (op_norm(w.adjoint() * w - Mat::Identity(n, n)) > kUnitTol) return std::nullopt;
  const Mat u = w.adjoint();

  const double gate = std::max(tol * 100.0, 1e-7);
  for (const Mat& s : span_a)
    if (left_factor_residual(u * s * u.adjoint(), pa, pb) > gate * (1.0 + s.norm()))
      return std::nullopt;
  for (const Mat& s : span_b)
    if (right_factor_residual(u * s * u.adjoint(), pa, pb) > gate * (1.0 + s.norm()))
      return std::nullopt;
  return u;
}

CPMap conjugated_tensor_extension(const Mat& u, const StarMono& f_a,
                                  const StarMono& f_b, const CPMap& alpha,
                                  const CPMap& beta) {
  const int p = f_a.src_dim();
  const int q = f_b.src_dim();
  const int n = f_a.dst_dim();
  if (f_b.dst_dim() != n) throw DomainError("ambient dimensions do not match");
  if (p * q != n)
    throw DomainError("factor dimensions do not multiply to the ambient");
  if (u.rows() != n || u.cols() != n)
    throw DomainError("conjugating matrix has the wrong size");
  if (op_norm(u.adjoint() * u - Mat::Identity(n, n)) > kFeasibilityTol)
    throw StructureError("conjugating matrix is not unitary");
  if (alpha.in_dim() != p || alpha.out_dim() != p || beta.in_dim() != q ||
      beta.out_dim() != q)
    throw DomainError("operation dimensions do not match their embeddings");

  const Mat iq = Mat::Identity(q, q);
  const Mat ip = Mat::Identity(p, p);

  // Straighten the operations: alpha lives on image(f_a), which u carries
  // onto M_p (x) I_q.  Transport it to an operation on the bare factor by
  // conjugating through both identifications, and likewise for beta.
  Mat choi_a = Mat::Zero(static_cast<Eigen::Index>(p) * p,
                         static_cast<Eigen::Index>(p) * p);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) {
      const Mat back =
          f_a.compress(u.adjoint() * kron(matrix_unit(p, i, j), iq) * u);
      const Mat fwd = left_factor_compress(
          u * f_a.apply(alpha.apply(back)) * u.adjoint(), p, q);
      choi_a.block(static_cast<Eigen::Index>(i) * p,
                   static_cast<Eigen::Index>(j) * p, p, p) = fwd;
    }
  Mat choi_b = Mat::Zero(static_cast<Eigen::Index>(q) * q,
                         static_cast<Eigen::Index>(q) * q);
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j) {
      const Mat back =
          f_b.compress(u.adjoint() * kron(ip, matrix_unit(q, i, j)) * u);
      const Mat fwd = right_factor_compress(
          u * f_b.apply(beta.apply(back)) * u.adjoint(), p, q);
      choi_b.block(static_cast<Eigen::Index>(i) * q,
                   static_cast<Eigen::Index>(j) * q, q, q) = fwd;
    }
  const CPMap tensored = tensor_operation(
      CPMap::from_choi(p, p, std::move(choi_a)),
      CPMap::from_choi(q, q, std::move(choi_b)));

  Mat choi = Mat::Zero(static_cast<Eigen::Index>(n) * n,
                       static_cast<Eigen::Index>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      choi.block(static_cast<Eigen::Index>(i) * n,
                 static_cast<Eigen::Index>(j) * n, n, n) =
          u.adjoint() *
          tensored.apply(u * matrix_unit(n, i, j) * u.adjoint()) * u;
  return CPMap::from_choi(n, n, std::move(choi));
}

}  // namespace subind::opalg

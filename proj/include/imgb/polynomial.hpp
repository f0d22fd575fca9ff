#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace imgb {

using Complex = std::complex<double>;

/// Dense polynomial with complex coefficients, ascending by exponent.
class Polynomial {
 public:
  Polynomial() : coeffs_{Complex{0.0}} {}
  /// Trailing coefficients below 1e-300 are dropped.
  explicit Polynomial(std::vector<Complex> ascending);
  static Polynomial from_real(const std::vector<double>& ascending);
  static Polynomial monomial(unsigned degree, Complex coefficient = 1.0);
  /// lead * prod (z - r_i)
  static Polynomial from_roots(const std::vector<Complex>& roots, Complex lead = 1.0);

  unsigned degree() const { return static_cast<unsigned>(coeffs_.size() - 1); }
  const std::vector<Complex>& coefficients() const { return coeffs_; }
  Complex leading() const { return coeffs_.back(); }
  bool is_real(double tol = 0.0) const;
  /// Largest coefficient modulus.
  double norm() const;

  Complex operator()(Complex z) const;
  double operator()(double x) const { return (*this)(Complex{x}).real(); }
  /// Value and first derivative by one Horner pass.
  std::pair<Complex, Complex> eval_with_derivative(Complex z) const;

  Polynomial derivative() const;
  /// Antiderivative with zero constant term.
  Polynomial integral() const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Complex s, const Polynomial& a);
  Polynomial operator-(Complex c) const;
  Polynomial operator+(Complex c) const;

  /// p(q(z)), expanded. Only for small degrees.
  friend Polynomial compose(const Polynomial& p, const Polynomial& q);

  /// One coefficient per line, ascending, `re [im]`; '#' starts a comment.
  static Polynomial parse_coefficients(std::string_view text);
  std::string to_coefficient_text() const;
  std::string to_string() const;

 private:
  std::vector<Complex> coeffs_;
};

/// f composed with itself `count` times, evaluated through the chain.
class IteratedMap {
 public:
  IteratedMap(const Polynomial& poly, unsigned count);

  unsigned count() const { return count_; }
  Complex operator()(Complex z) const;
  /// Value and derivative by the chain rule.
  std::pair<Complex, Complex> eval_with_derivative(Complex z) const;

 private:
  Polynomial poly_;
  Polynomial deriv_;
  unsigned count_;
};

struct RootOptions {
  double tolerance = 1e-12;          // relative root residual target
  double cluster_tolerance = 1e-8;   // relative distance for merging roots
  int max_iterations = 1000;
};

struct RootCluster {
  Complex center;
  unsigned multiplicity = 1;
};

/// All roots with multiplicity, by Aberth-Ehrlich iteration followed by
/// Newton polishing. Sorted by (real, imaginary). Throws NumericError on
/// non-convergence.
std::vector<Complex> all_roots(const Polynomial& poly, const RootOptions& options = {});

/// Roots grouped into clusters with multiplicity.
std::vector<RootCluster> root_clusters(const Polynomial& poly, const RootOptions& options = {});

/// Roots of p - value.
std::vector<Complex> preimages(const Polynomial& poly, Complex value, const RootOptions& options = {});

struct CriticalData {
  std::vector<RootCluster> points;
  std::vector<Complex> values;        // distinct
  std::vector<Complex> postcritical;  // forward orbits of values, merged
  bool finite = false;                // orbit closed up within the depth
};

/// Critical points, critical values, and the forward orbits of the values up
/// to `depth` images, merging coincidences within `merge_tolerance` * scale.
CriticalData critical_data(const Polynomial& poly, unsigned depth = 16, double merge_tolerance = 1e-8,
                           const RootOptions& options = {});

/// Images of every critical value under f, f^2, ..., f^(levels-1), i.e. the
/// critical values of the level-th iterate.
std::vector<Complex> iterate_critical_values(const Polynomial& poly, unsigned levels, double merge_tolerance = 1e-8,
                                             const RootOptions& options = {});

struct PreimageTree {
  Complex base;
  unsigned degree = 0;
  unsigned height = 0;
  std::vector<std::vector<Complex>> levels;  // levels[0] = {base}
  std::vector<std::vector<std::size_t>> parents;  // parents[k][i] indexes levels[k-1]
};

/// Level k holds the roots of f(z) = parent for every level-(k-1) parent.
/// Throws NumericError if two points at a level are closer than
/// `separation` * scale (the base point is degenerate).
PreimageTree preimage_tree(const Polynomial& poly, Complex base, unsigned height, double separation = 1e-5,
                           const RootOptions& options = {});

/// Scale used for relative tolerances: max(1, |z|) over the given points.
double point_scale(const std::vector<Complex>& points);

/// Sorted by (real, imaginary).
void sort_points(std::vector<Complex>& points);

}  // namespace imgb

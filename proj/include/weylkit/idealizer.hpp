#pragma once

#include <array>
#include <map>
#include <vector>

#include "weylkit/exact_linear.hpp"
#include "weylkit/weyl.hpp"

namespace weylkit {

/// Nonconstant plane curve polynomial f with its total degree N.
/// Irreducibility and injectivity of the normalization are the caller's
/// responsibility; every computation below is well defined without them.
class CurvePoly {
public:
  explicit CurvePoly(BiPoly f) : f_(std::move(f)) {
    if (f_.is_constant())
      throw Error(ErrorKind::InputError, "curve polynomial must be nonconstant");
  }

  const BiPoly &poly() const { return f_; }
  int degree() const { return f_.total_degree(); }

private:
  BiPoly f_;
};

/// Basis of a subspace of B_level; elements are linearly independent.
struct FilteredBasis {
  int level = 0;
  std::vector<WeylOp> elements;

  std::size_t dim() const { return elements.size(); }
};

namespace detail {

using ImageKey = std::array<int, 4>;
using Image = std::map<ImageKey, Rational>;

/// Kernel, inside B_n, of a linear map given by its values on the monomial
/// basis. Rows are the image coordinates, columns the basis monomials.
template <class ImageFn>
FilteredBasis filtered_kernel(int n, ImageFn image_of) {
  const BernsteinLevel level = bernstein_basis(n);
  std::vector<Image> images;
  images.reserve(level.size());
  std::map<ImageKey, std::size_t> row_of;
  for (const auto &m : level.monomials) {
    images.push_back(image_of(m.to_op()));
    for (const auto &[key, c] : images.back())
      row_of.try_emplace(key, 0);
  }
  std::size_t next = 0;
  for (auto &[key, r] : row_of)
    r = next++;

  QMatrix system(row_of.size(), level.size());
  for (std::size_t col = 0; col < images.size(); ++col)
    for (const auto &[key, c] : images[col])
      system(row_of.at(key), col) = c;

  FilteredBasis out{n, {}};
  for (const auto &v : nullspace_basis(system))
    out.elements.push_back(combine(level, v));
  return out;
}

} // namespace detail

/// theta in (gA_2 : fA_2), i.e. theta f A_2 inside g A_2. In normal form,
/// left multiplication by g^-1 acts coefficientwise, so membership holds iff
/// g divides every coefficient of theta f.
inline bool colon_member(const WeylOp &theta, const CurvePoly &f, const BiPoly &g) {
  if (g.is_zero())
    throw Error(ErrorKind::ZeroDivisor, "colon ideal with zero numerator");
  const WeylOp product = weyl_mul(theta, WeylOp(f.poly()));
  for (const auto &[d, p] : product.terms())
    if (!divides(g, p))
      return false;
  return true;
}

/// Membership in the idealizer of fA_2, which equals A_2 intersected with
/// f A_2 f^-1.
inline bool idealizer_member(const WeylOp &theta, const CurvePoly &f) {
  return colon_member(theta, f, f.poly());
}

/// Basis of G_n = idealizer of fA_2 intersected with B_n. The remainder of each
/// coefficient of theta f modulo f is linear in theta; G_n is its kernel.
inline FilteredBasis idealizer_filtered_basis(const CurvePoly &f, int n) {
  const WeylOp fop(f.poly());
  return detail::filtered_kernel(n, [&](const WeylOp &m) {
    detail::Image img;
    const WeylOp product = weyl_mul(m, fop);
    for (const auto &[d, p] : product.terms()) {
      const BiPoly rem = divide(p, f.poly()).remainder;
      for (const auto &[e, c] : rem.terms())
        img[{d.i, d.j, e.i, e.j}] += c;
    }
    return img;
  });
}

/// dim F_n = dim G_n - dim B_(n-N), using fA_2 meet B_n = f B_(n-N) (the
/// Bernstein degree is additive).
inline std::size_t quotient_dim(const CurvePoly &f, int n) {
  const auto g = idealizer_filtered_basis(f, n).dim();
  return g - static_cast<std::size_t>(bernstein_dim(n - f.degree()));
}

/// Basis of ((x - px, y - py)A_2 : fA_2) meet B_n: every normal-form
/// coefficient of theta f must vanish at the point.
inline FilteredBasis point_colon_basis(const CurvePoly &f, const Rational &px,
                                       const Rational &py, int n) {
  const WeylOp fop(f.poly());
  return detail::filtered_kernel(n, [&](const WeylOp &m) {
    detail::Image img;
    const WeylOp product = weyl_mul(m, fop);
    for (const auto &[d, p] : product.terms())
      img[{d.i, d.j, 0, 0}] += evaluate(p, px, py);
    for (auto it = img.begin(); it != img.end();)
      it = sgn(it->second) == 0 ? img.erase(it) : std::next(it);
    return img;
  });
}

} // namespace weylkit

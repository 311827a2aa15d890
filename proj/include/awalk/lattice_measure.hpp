#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <type_traits>

#include <Eigen/Core>

#include "awalk/kahan.hpp"
#include "awalk/rational.hpp"
#include "awalk/step_law.hpp"

namespace awalk {

namespace detail {

template <typename Scalar>
Scalar sum_masses(const Eigen::Array<Scalar, Eigen::Dynamic, 1>& m) {
  if constexpr (std::is_same_v<Scalar, double>) {
    KahanSum s;
    for (Eigen::Index i = 0; i < m.size(); ++i) s += m[i];
    return s.value();
  } else {
    Scalar s(0);
    for (Eigen::Index i = 0; i < m.size(); ++i) s += m[i];
    return s;
  }
}

}  // namespace detail

// Finitely supported nonnegative measure on Z, stored densely over the
// support interval [origin, origin + size). The walks evolved here have
// interval supports, so a dense array beats a site map on both memory and
// cache behaviour; scattered measures simply carry interior zeros.
// Templated on scalar: double for production, Rational for the exact
// oracle mode at small n.
template <typename Scalar = double>
class LatticeMeasure {
 public:
  using Array = Eigen::Array<Scalar, Eigen::Dynamic, 1>;

  LatticeMeasure() = default;

  LatticeMeasure(long long origin, Array mass) : origin_(origin), mass_(std::move(mass)) {
    trim();
    validate();
    total_ = detail::sum_masses<Scalar>(mass_);
    check_total();
  }

  static LatticeMeasure delta(long long site) {
    Array m(1);
    m[0] = Scalar(1);
    return LatticeMeasure(site, std::move(m));
  }

  static LatticeMeasure from_step_law(const StepLaw& s) {
    Array m(s.max_offset() - s.min_offset() + 1);
    m.setZero();
    for (std::size_t i = 0; i < s.size(); ++i) {
      if constexpr (std::is_same_v<Scalar, double>)
        m[s.offset(i) - s.min_offset()] = s.prob(i);
      else
        m[s.offset(i) - s.min_offset()] = Scalar(s.weight(i), s.total());
    }
    return LatticeMeasure(s.min_offset(), std::move(m));
  }

  bool empty() const { return mass_.size() == 0; }
  Eigen::Index size() const { return mass_.size(); }
  long long origin() const { return origin_; }
  long long min_site() const { return origin_; }
  long long max_site() const { return origin_ + static_cast<long long>(mass_.size()) - 1; }

  const Array& mass_array() const { return mass_; }

  Scalar at(long long site) const {
    if (site < min_site() || site > max_site()) return Scalar(0);
    return mass_[site - origin_];
  }
  Scalar operator()(long long site) const { return at(site); }

  Scalar total() const { return total_; }

  Eigen::Index support_count() const {
    Eigen::Index c = 0;
    for (Eigen::Index i = 0; i < mass_.size(); ++i)
      if (!(mass_[i] == Scalar(0))) ++c;
    return c;
  }

  bool is_probability(double tol = 1e-12) const {
    if constexpr (std::is_same_v<Scalar, double>)
      return std::abs(total_ - 1.0) <= tol;
    else
      return total_ == Scalar(1);
  }

 private:
  void trim() {
    Eigen::Index lo = 0, hi = mass_.size();
    while (lo < hi && mass_[lo] == Scalar(0)) ++lo;
    while (hi > lo && mass_[hi - 1] == Scalar(0)) --hi;
    if (lo == hi) {
      mass_.resize(0);
      origin_ = 0;
      return;
    }
    if (lo > 0 || hi < mass_.size()) {
      Array trimmed = mass_.segment(lo, hi - lo).eval();
      mass_.swap(trimmed);
      origin_ += lo;
    }
  }

  void validate() const {
    for (Eigen::Index i = 0; i < mass_.size(); ++i)
      if (mass_[i] < Scalar(0)) throw std::invalid_argument("LatticeMeasure: negative mass");
  }

  void check_total() const {
    if constexpr (std::is_same_v<Scalar, double>) {
      if (total_ > 1.0 + 1e-12) throw std::invalid_argument("LatticeMeasure: total mass exceeds 1");
    } else {
      if (total_ > Scalar(1)) throw std::invalid_argument("LatticeMeasure: total mass exceeds 1");
    }
  }

  long long origin_ = 0;
  Array mass_;
  Scalar total_ = Scalar(0);
};

// Dense probability vector on Z/qZ.
class CyclicDistribution {
 public:
  CyclicDistribution(long long q, Eigen::ArrayXd mass) : q_(q), mass_(std::move(mass)) {
    if (q_ < 1) throw std::invalid_argument("CyclicDistribution: modulus must be >= 1");
    if (mass_.size() != q_) throw std::invalid_argument("CyclicDistribution: length != modulus");
    KahanSum s;
    for (Eigen::Index i = 0; i < mass_.size(); ++i) {
      if (mass_[i] < 0) {
        if (mass_[i] < -1e-13) throw std::invalid_argument("CyclicDistribution: negative entry");
        mass_[i] = 0.0;  // roundoff dust from transforms
      }
      s += mass_[i];
    }
    if (std::abs(s.value() - 1.0) > 1e-10)
      throw std::invalid_argument("CyclicDistribution: masses do not sum to 1");
  }

  static CyclicDistribution uniform(long long q) {
    return CyclicDistribution(q, Eigen::ArrayXd::Constant(q, 1.0 / static_cast<double>(q)));
  }

  static CyclicDistribution delta(long long q, long long site) {
    Eigen::ArrayXd m = Eigen::ArrayXd::Zero(q);
    m[((site % q) + q) % q] = 1.0;
    return CyclicDistribution(q, std::move(m));
  }

  long long modulus() const { return q_; }
  const Eigen::ArrayXd& mass_array() const { return mass_; }
  double at(long long residue) const { return mass_[((residue % q_) + q_) % q_]; }

 private:
  long long q_;
  Eigen::ArrayXd mass_;
};

// ---- free operations ------------------------------------------------------

// (m1 * m2)(x) = sum_y m1(y) m2(x - y). Iterates the factor with the fewer
// nonzero sites; output support is the interval sum of the supports.
template <typename Scalar>
LatticeMeasure<Scalar> convolve(const LatticeMeasure<Scalar>& m1, const LatticeMeasure<Scalar>& m2) {
  using Array = typename LatticeMeasure<Scalar>::Array;
  if (m1.empty() || m2.empty()) return LatticeMeasure<Scalar>();
  const LatticeMeasure<Scalar>& kernel = (m1.support_count() <= m2.support_count()) ? m1 : m2;
  const LatticeMeasure<Scalar>& base = (&kernel == &m1) ? m2 : m1;
  Array out(base.size() + kernel.size() - 1);
  out.setZero();
  const auto& km = kernel.mass_array();
  const auto& bm = base.mass_array();
  for (Eigen::Index k = 0; k < km.size(); ++k) {
    if (km[k] == Scalar(0)) continue;
    const Scalar w = km[k];
    for (Eigen::Index i = 0; i < bm.size(); ++i) out[k + i] += w * bm[i];
  }
  return LatticeMeasure<Scalar>(m1.origin() + m2.origin(), std::move(out));
}

// (m_k)_* m: mass at site x moves to kx. Injective relabeling, so entropy
// and the l2 norm are untouched.
template <typename Scalar>
LatticeMeasure<Scalar> pushforward_scale(const LatticeMeasure<Scalar>& m, long long k) {
  using Array = typename LatticeMeasure<Scalar>::Array;
  if (k == 0) throw std::invalid_argument("pushforward_scale: k must be nonzero");
  if (m.empty()) return m;
  long long ka = std::llabs(k);
  Eigen::Index n = m.size();
  Array out((n - 1) * ka + 1);
  out.setZero();
  const auto& mm = m.mass_array();
  if (k > 0) {
    for (Eigen::Index i = 0; i < n; ++i) out[i * ka] = mm[i];
    return LatticeMeasure<Scalar>(k * m.origin(), std::move(out));
  }
  for (Eigen::Index i = 0; i < n; ++i) out[(n - 1 - i) * ka] = mm[i];
  return LatticeMeasure<Scalar>(k * m.max_site(), std::move(out));
}

template <typename Scalar>
LatticeMeasure<Scalar> translate(const LatticeMeasure<Scalar>& m, long long shift) {
  return m.empty() ? m : LatticeMeasure<Scalar>(m.origin() + shift, m.mass_array());
}

// (m mod q)(x) = m(x + qZ); input must be a probability measure.
CyclicDistribution reduce_mod(const LatticeMeasure<double>& m, long long q);

// Shannon entropy in nats, 0 log 0 = 0.
double entropy(const LatticeMeasure<double>& m);
double entropy(const CyclicDistribution& p);

double l2_norm_sq(const LatticeMeasure<double>& m);
double l2_norm_sq(const CyclicDistribution& p);

// l1 distance in the un-halved measure-norm convention (max 2 between
// probability measures); half_tv_distance is the [0,1] normalization.
double l1_distance(const CyclicDistribution& p, const CyclicDistribution& r);
double half_tv_distance(const CyclicDistribution& p, const CyclicDistribution& r);
double l1_distance(const LatticeMeasure<double>& m1, const LatticeMeasure<double>& m2);

inline double half_tv_distance(const LatticeMeasure<double>& m1, const LatticeMeasure<double>& m2) {
  return 0.5 * l1_distance(m1, m2);
}

// ---- implementations (double specific) ------------------------------------

inline CyclicDistribution reduce_mod(const LatticeMeasure<double>& m, long long q) {
  if (q < 1) throw std::invalid_argument("reduce_mod: modulus must be >= 1");
  if (!m.is_probability()) throw std::invalid_argument("reduce_mod: input is not a probability measure");
  Eigen::ArrayXd out = Eigen::ArrayXd::Zero(q);
  const auto& mm = m.mass_array();
  long long r = ((m.origin() % q) + q) % q;
  for (Eigen::Index i = 0; i < mm.size(); ++i) {
    out[r] += mm[i];
    if (++r == q) r = 0;
  }
  return CyclicDistribution(q, std::move(out));
}

inline double entropy(const LatticeMeasure<double>& m) {
  KahanSum h;
  const auto& mm = m.mass_array();
  for (Eigen::Index i = 0; i < mm.size(); ++i)
    if (mm[i] > 0.0) h += -mm[i] * std::log(mm[i]);
  return h.value();
}

inline double entropy(const CyclicDistribution& p) {
  KahanSum h;
  const auto& mm = p.mass_array();
  for (Eigen::Index i = 0; i < mm.size(); ++i)
    if (mm[i] > 0.0) h += -mm[i] * std::log(mm[i]);
  return h.value();
}

inline double l2_norm_sq(const LatticeMeasure<double>& m) {
  KahanSum s;
  const auto& mm = m.mass_array();
  for (Eigen::Index i = 0; i < mm.size(); ++i) s += mm[i] * mm[i];
  return s.value();
}

inline double l2_norm_sq(const CyclicDistribution& p) {
  KahanSum s;
  const auto& mm = p.mass_array();
  for (Eigen::Index i = 0; i < mm.size(); ++i) s += mm[i] * mm[i];
  return s.value();
}

inline double l1_distance(const CyclicDistribution& p, const CyclicDistribution& r) {
  if (p.modulus() != r.modulus()) throw std::invalid_argument("l1_distance: modulus mismatch");
  KahanSum s;
  const auto& a = p.mass_array();
  const auto& b = r.mass_array();
  for (Eigen::Index i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
  return s.value();
}

inline double half_tv_distance(const CyclicDistribution& p, const CyclicDistribution& r) {
  return 0.5 * l1_distance(p, r);
}

inline double l1_distance(const LatticeMeasure<double>& m1, const LatticeMeasure<double>& m2) {
  KahanSum s;
  long long lo = std::min(m1.min_site(), m2.min_site());
  long long hi = std::max(m1.max_site(), m2.max_site());
  if (m1.empty() && m2.empty()) return 0.0;
  if (m1.empty()) return detail::sum_masses<double>(m2.mass_array());
  if (m2.empty()) return detail::sum_masses<double>(m1.mass_array());
  for (long long x = lo; x <= hi; ++x) s += std::abs(m1.at(x) - m2.at(x));
  return s.value();
}

// Exact-mode helper: convert a rational measure to doubles (oracle tests
// compute exactly, then compare on the double side).
inline LatticeMeasure<double> to_double(const LatticeMeasure<Rational>& m) {
  Eigen::ArrayXd out(m.size());
  for (Eigen::Index i = 0; i < m.size(); ++i) out[i] = m.mass_array()[i].to_double();
  return LatticeMeasure<double>(m.origin(), std::move(out));
}

}  // namespace awalk

#pragma once

#include <mpfr.h>

#include <functional>
#include <string>

#include "shadowlab/linalg.hpp"

namespace shadowlab {

/// Outward-rounded interval over MPFR. Every operation rounds the lower
/// bound down and the upper bound up, so the true value is always enclosed.
/// Arithmetic here assumes nonnegative operands (norm values and absolute
/// coordinates), which keeps multiplication and powers monotone.
class MpfrInterval {
 public:
  explicit MpfrInterval(mpfr_prec_t prec);
  MpfrInterval(const MpfrInterval& other);
  MpfrInterval& operator=(const MpfrInterval& other);
  MpfrInterval(MpfrInterval&& other) noexcept;
  MpfrInterval& operator=(MpfrInterval&& other) noexcept;
  ~MpfrInterval();

  static MpfrInterval from_rat(const Rat& value, mpfr_prec_t prec);
  static MpfrInterval from_rat_abs(const Rat& value, mpfr_prec_t prec);

  void add(const MpfrInterval& other);
  void mul(const MpfrInterval& other);       // both operands nonnegative
  void pow_int(const BigInt& exponent);      // exponent >= 1, base nonnegative
  void root(unsigned long k);                // k-th root, k >= 1
  void sqrt_inplace();

  bool certainly_less(const MpfrInterval& other) const;  // hi < other.lo
  bool contains(const Rat& value) const;
  bool overlaps(const MpfrInterval& other) const;

  double lo_double() const;
  double hi_double() const;
  mpfr_prec_t precision() const { return prec_; }

 private:
  mpfr_t lo_;
  mpfr_t hi_;
  mpfr_prec_t prec_;
};

enum class NormKind { l1, l2, linf, lp, weighted_l1, polyhedral, plugin };

/// Plugin normalizations return a certified enclosure of their value at the
/// requested working precision.
using PluginEval = std::function<MpfrInterval(const RVec&, mpfr_prec_t)>;

/// A normalization for the generalized steepest edge rule. Built-in kinds
/// satisfy all three norm axioms; plugins only declare positivity and
/// positive homogeneity (spot-checked at registration).
class NormSpec {
 public:
  static NormSpec l1();
  static NormSpec l2();
  static NormSpec linf();
  static NormSpec lp(const Rat& p);                 // rational p > 1
  static NormSpec weighted_l1(RVec weights);        // weights > 0 componentwise
  static NormSpec polyhedral(RMat generators, std::string name = "poly");
  static NormSpec plugin(std::string name, int dim, PluginEval eval,
                         std::uint64_t spot_check_seed = 2024);

  NormKind kind() const { return kind_; }
  bool exact_rational() const;  // l1 / linf / weighted_l1 / polyhedral
  const Rat& p_value() const { return p_; }
  const RVec& weights() const { return weights_; }
  const RMat& generators() const { return generators_; }
  std::string to_string() const;

  bool regular_required = false;

  friend Rat norm_exact(const NormSpec&, const RVec&);
  friend MpfrInterval norm_interval(const NormSpec&, const RVec&, mpfr_prec_t);

 private:
  NormSpec() = default;
  NormKind kind_ = NormKind::l2;
  Rat p_;
  RVec weights_;
  RMat generators_;
  PluginEval plugin_;
  std::string name_;
};

/// Exact value for the rational-valued kinds; throws for l2/lp/plugin.
Rat norm_exact(const NormSpec& spec, const RVec& x);

/// ||x||_2^2, exact. Comparisons of positive ratios against the 2-norm go
/// through this squared form.
Rat l2_norm_squared(const RVec& x);

/// Certified enclosure at the given precision (any kind).
MpfrInterval norm_interval(const NormSpec& spec, const RVec& x, mpfr_prec_t prec);

/// Value surface mirroring the three evaluation regimes.
struct NormValue {
  enum class Form { exact, squared, interval };
  Form form;
  Rat exact;        // exact kinds, or l2 when the square is a perfect square
  Rat squared;      // l2
  double interval_lo = 0, interval_hi = 0;  // lp / plugin display bounds
};

NormValue norm_eval(const NormSpec& spec, const RVec& x);

/// eta(e_i) == 1 for every standard basis vector. Exact where possible; for
/// lp/plugin kinds certified containment of 1 at high precision.
bool is_regular(const NormSpec& spec, int dim);
void require_regular(const NormSpec& spec, int dim);  // throws NotRegular

enum class RatioCmp { less, greater, equal, uncertifiable };

inline constexpr mpfr_prec_t kRatioPrecisionBudget = 4096;

/// Compares cs1/eta(s1) with cs2/eta(s2) for cs1, cs2 > 0. Exact for the
/// rational kinds, exact via squared cross-multiplication for l2, and
/// certified interval refinement (doubling precision up to the budget) for
/// lp/plugin; returns `uncertifiable` when the budget runs out.
RatioCmp compare_ratio(const NormSpec& spec, const Rat& cs1, const RVec& s1, const Rat& cs2,
                       const RVec& s2);

/// Parses the CLI syntax: "l1" | "l2" | "linf" | "lp:<p>" | "wl1:<w1,...,wn>"
/// | "poly:<file>". The loader maps a file path to generator rows.
NormSpec parse_norm_spec(const std::string& text,
                         const std::function<RMat(const std::string&)>& poly_loader = {});

}  // namespace shadowlab

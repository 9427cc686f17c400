#include "shadowlab/norms.hpp"

#include <utility>

namespace shadowlab {

MpfrInterval::MpfrInterval(mpfr_prec_t prec) : prec_(prec) {
  mpfr_init2(lo_, prec);
  mpfr_init2(hi_, prec);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

MpfrInterval::MpfrInterval(const MpfrInterval& other) : prec_(other.prec_) {
  mpfr_init2(lo_, prec_);
  mpfr_init2(hi_, prec_);
  mpfr_set(lo_, other.lo_, MPFR_RNDD);
  mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

MpfrInterval& MpfrInterval::operator=(const MpfrInterval& other) {
  if (this == &other) return *this;
  if (prec_ != other.prec_) {
    mpfr_set_prec(lo_, other.prec_);
    mpfr_set_prec(hi_, other.prec_);
    prec_ = other.prec_;
  }
  mpfr_set(lo_, other.lo_, MPFR_RNDD);
  mpfr_set(hi_, other.hi_, MPFR_RNDU);
  return *this;
}

MpfrInterval::MpfrInterval(MpfrInterval&& other) noexcept : prec_(other.prec_) {
  mpfr_init2(lo_, prec_);
  mpfr_init2(hi_, prec_);
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
}

MpfrInterval& MpfrInterval::operator=(MpfrInterval&& other) noexcept {
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
  std::swap(prec_, other.prec_);
  return *this;
}

MpfrInterval::~MpfrInterval() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

MpfrInterval MpfrInterval::from_rat(const Rat& value, mpfr_prec_t prec) {
  MpfrInterval out(prec);
  mpfr_set_q(out.lo_, value.backend().data(), MPFR_RNDD);
  mpfr_set_q(out.hi_, value.backend().data(), MPFR_RNDU);
  return out;
}

MpfrInterval MpfrInterval::from_rat_abs(const Rat& value, mpfr_prec_t prec) {
  return from_rat(value < 0 ? Rat(-value) : value, prec);
}

void MpfrInterval::add(const MpfrInterval& other) {
  mpfr_add(lo_, lo_, other.lo_, MPFR_RNDD);
  mpfr_add(hi_, hi_, other.hi_, MPFR_RNDU);
}

void MpfrInterval::mul(const MpfrInterval& other) {
  mpfr_mul(lo_, lo_, other.lo_, MPFR_RNDD);
  mpfr_mul(hi_, hi_, other.hi_, MPFR_RNDU);
}

void MpfrInterval::pow_int(const BigInt& exponent) {
  mpfr_pow_z(lo_, lo_, exponent.backend().data(), MPFR_RNDD);
  mpfr_pow_z(hi_, hi_, exponent.backend().data(), MPFR_RNDU);
}

void MpfrInterval::root(unsigned long k) {
  mpfr_rootn_ui(lo_, lo_, k, MPFR_RNDD);
  mpfr_rootn_ui(hi_, hi_, k, MPFR_RNDU);
}

void MpfrInterval::sqrt_inplace() {
  mpfr_sqrt(lo_, lo_, MPFR_RNDD);
  mpfr_sqrt(hi_, hi_, MPFR_RNDU);
}

bool MpfrInterval::certainly_less(const MpfrInterval& other) const {
  return mpfr_cmp(hi_, other.lo_) < 0;
}

bool MpfrInterval::contains(const Rat& value) const {
  return mpfr_cmp_q(lo_, value.backend().data()) <= 0 &&
         mpfr_cmp_q(hi_, value.backend().data()) >= 0;
}

bool MpfrInterval::overlaps(const MpfrInterval& other) const {
  return !certainly_less(other) && !other.certainly_less(*this);
}

double MpfrInterval::lo_double() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double MpfrInterval::hi_double() const { return mpfr_get_d(hi_, MPFR_RNDU); }

NormSpec NormSpec::l1() {
  NormSpec s;
  s.kind_ = NormKind::l1;
  s.name_ = "l1";
  return s;
}

NormSpec NormSpec::l2() {
  NormSpec s;
  s.kind_ = NormKind::l2;
  s.name_ = "l2";
  return s;
}

NormSpec NormSpec::linf() {
  NormSpec s;
  s.kind_ = NormKind::linf;
  s.name_ = "linf";
  return s;
}

NormSpec NormSpec::lp(const Rat& p) {
  if (p <= 1) fail(Errc::bad_input, "lp norm requires p > 1");
  if (numerator(p) > 1000000 || denominator(p) > 1000000) {
    fail(Errc::bad_input, "lp norm: p components too large for the interval engine");
  }
  NormSpec s;
  s.kind_ = NormKind::lp;
  s.p_ = p;
  s.name_ = "lp:" + rat_to_string(p);
  return s;
}

NormSpec NormSpec::weighted_l1(RVec weights) {
  for (Eigen::Index i = 0; i < weights.size(); ++i) {
    if (weights(i) <= 0) fail(Errc::bad_input, "weighted_l1: weights must be positive");
  }
  NormSpec s;
  s.kind_ = NormKind::weighted_l1;
  s.weights_ = std::move(weights);
  s.name_ = "wl1";
  return s;
}

NormSpec NormSpec::polyhedral(RMat generators, std::string name) {
  // eta(x) = max_i |g_i . x| is a norm exactly when the rows span, i.e. no
  // nonzero x is orthogonal to all of them.
  if (rank(generators) != generators.cols()) {
    fail(Errc::bad_input, "polyhedral norm: generators must have full column rank");
  }
  NormSpec s;
  s.kind_ = NormKind::polyhedral;
  s.generators_ = std::move(generators);
  s.name_ = std::move(name);
  return s;
}

NormSpec NormSpec::plugin(std::string name, int dim, PluginEval eval, std::uint64_t seed) {
  NormSpec s;
  s.kind_ = NormKind::plugin;
  s.plugin_ = std::move(eval);
  s.name_ = std::move(name);
  // Positive homogeneity spot-check: enclosures of eta(lambda x) and
  // |lambda| eta(x) must overlap on random pairs.
  auto rng = make_rng(seed);
  for (int trial = 0; trial < 100; ++trial) {
    RVec x(dim);
    bool nonzero = false;
    for (int i = 0; i < dim; ++i) {
      x(i) = random_rational(rng, 20, 6);
      if (x(i) != 0) nonzero = true;
    }
    if (!nonzero) x(0) = 1;
    Rat lambda = random_rational(rng, 8, 5);
    if (lambda == 0) lambda = 1;
    MpfrInterval lhs = s.plugin_(RVec(lambda * x), 192);
    MpfrInterval rhs = s.plugin_(x, 192);
    rhs.mul(MpfrInterval::from_rat_abs(lambda, 192));
    if (!lhs.overlaps(rhs)) {
      fail(Errc::bad_input, "plugin norm '" + s.name_ + "' failed the positive-homogeneity spot-check");
    }
    MpfrInterval zero_test = s.plugin_(x, 192);
    if (zero_test.hi_double() <= 0.0) {
      fail(Errc::bad_input, "plugin norm '" + s.name_ + "' failed the positivity spot-check");
    }
  }
  return s;
}

bool NormSpec::exact_rational() const {
  switch (kind_) {
    case NormKind::l1:
    case NormKind::linf:
    case NormKind::weighted_l1:
    case NormKind::polyhedral:
      return true;
    default:
      return false;
  }
}

std::string NormSpec::to_string() const {
  switch (kind_) {
    case NormKind::l1: return "l1";
    case NormKind::l2: return "l2";
    case NormKind::linf: return "linf";
    case NormKind::lp: return "lp:" + rat_to_string(p_);
    case NormKind::weighted_l1: {
      std::string out = "wl1:";
      for (Eigen::Index i = 0; i < weights_.size(); ++i) {
        if (i) out += ",";
        out += rat_to_string(weights_(i));
      }
      return out;
    }
    case NormKind::polyhedral: return "poly:" + name_;
    case NormKind::plugin: return "plugin:" + name_;
  }
  return "?";
}

Rat norm_exact(const NormSpec& spec, const RVec& x) {
  switch (spec.kind_) {
    case NormKind::l1:
      return l1_norm(x);
    case NormKind::linf:
      return linf_norm(x);
    case NormKind::weighted_l1: {
      if (spec.weights_.size() != x.size()) fail(Errc::dimension_mismatch, "weighted_l1: dim mismatch");
      Rat sum = 0;
      for (Eigen::Index i = 0; i < x.size(); ++i) {
        sum += spec.weights_(i) * (x(i) < 0 ? Rat(-x(i)) : x(i));
      }
      return sum;
    }
    case NormKind::polyhedral: {
      if (spec.generators_.cols() != x.size()) fail(Errc::dimension_mismatch, "polyhedral: dim mismatch");
      Rat best = 0;
      for (int i = 0; i < spec.generators_.rows(); ++i) {
        Rat v = dot(RVec(spec.generators_.row(i).transpose()), x);
        if (v < 0) v = -v;
        if (v > best) best = v;
      }
      return best;
    }
    default:
      fail(Errc::bad_input, "norm_exact: kind is not rational-valued");
  }
}

Rat l2_norm_squared(const RVec& x) {
  Rat sum = 0;
  for (Eigen::Index i = 0; i < x.size(); ++i) sum += x(i) * x(i);
  return sum;
}

MpfrInterval norm_interval(const NormSpec& spec, const RVec& x, mpfr_prec_t prec) {
  switch (spec.kind_) {
    case NormKind::l1:
    case NormKind::linf:
    case NormKind::weighted_l1:
    case NormKind::polyhedral:
      return MpfrInterval::from_rat(norm_exact(spec, x), prec);
    case NormKind::l2: {
      MpfrInterval s = MpfrInterval::from_rat(l2_norm_squared(x), prec);
      s.sqrt_inplace();
      return s;
    }
    case NormKind::lp: {
      // (sum |x_i|^p)^(1/p) with p = pr/ps via integer powers and roots,
      // both monotone on nonnegative inputs.
      const BigInt pr = numerator(spec.p_);
      const auto ps = static_cast<unsigned long>(denominator(spec.p_));
      MpfrInterval sum(prec);
      for (Eigen::Index i = 0; i < x.size(); ++i) {
        if (x(i) == 0) continue;
        MpfrInterval term = MpfrInterval::from_rat_abs(x(i), prec);
        term.pow_int(pr);
        if (ps != 1) term.root(ps);
        sum.add(term);
      }
      if (ps != 1) sum.pow_int(BigInt(ps));
      sum.root(static_cast<unsigned long>(pr));
      return sum;
    }
    case NormKind::plugin:
      return spec.plugin_(x, prec);
  }
  fail(Errc::bad_input, "norm_interval: unknown kind");
}

NormValue norm_eval(const NormSpec& spec, const RVec& x) {
  if (spec.regular_required) require_regular(spec, static_cast<int>(x.size()));
  NormValue out{};
  if (spec.exact_rational()) {
    out.form = NormValue::Form::exact;
    out.exact = norm_exact(spec, x);
    return out;
  }
  if (spec.kind() == NormKind::l2) {
    out.form = NormValue::Form::squared;
    out.squared = l2_norm_squared(x);
    // Report the exact root when the square is a perfect square (e.g. 25 -> 5).
    const BigInt num = numerator(out.squared);
    const BigInt den = denominator(out.squared);
    const BigInt rn = sqrt(num);
    const BigInt rd = sqrt(den);
    if (rn * rn == num && rd * rd == den) out.exact = Rat(rn) / Rat(rd);
    return out;
  }
  out.form = NormValue::Form::interval;
  const MpfrInterval iv = norm_interval(spec, x, 256);
  out.interval_lo = iv.lo_double();
  out.interval_hi = iv.hi_double();
  return out;
}

bool is_regular(const NormSpec& spec, int dim) {
  switch (spec.kind()) {
    case NormKind::l1:
    case NormKind::l2:
    case NormKind::linf:
    case NormKind::lp:
      return true;  // eta(e_i) = 1 identically for every p-norm
    case NormKind::weighted_l1: {
      if (spec.weights().size() != dim) return false;
      for (int i = 0; i < dim; ++i) {
        if (spec.weights()(i) != 1) return false;
      }
      return true;
    }
    case NormKind::polyhedral: {
      if (spec.generators().cols() != dim) return false;
      for (int j = 0; j < dim; ++j) {
        Rat col_max = 0;
        for (int i = 0; i < spec.generators().rows(); ++i) {
          Rat v = spec.generators()(i, j);
          if (v < 0) v = -v;
          if (v > col_max) col_max = v;
        }
        if (col_max != 1) return false;
      }
      return true;
    }
    case NormKind::plugin: {
      for (int i = 0; i < dim; ++i) {
        const MpfrInterval iv = norm_interval(spec, unit_vector(dim, i), 256);
        if (!iv.contains(Rat(1))) return false;
      }
      return true;
    }
  }
  return false;
}

void require_regular(const NormSpec& spec, int dim) {
  if (!is_regular(spec, dim)) {
    fail(Errc::not_regular, "norm " + spec.to_string() + " is not regular (eta(e_i) != 1)");
  }
}

namespace {

int sign3(const Rat& a, const Rat& b) {
  if (a < b) return -1;
  if (a > b) return 1;
  return 0;
}

}  // namespace

RatioCmp compare_ratio(const NormSpec& spec, const Rat& cs1, const RVec& s1, const Rat& cs2,
                       const RVec& s2) {
  if (cs1 <= 0 || cs2 <= 0) fail(Errc::bad_input, "compare_ratio: numerators must be positive");
  if (spec.exact_rational()) {
    // cs1/eta1 ? cs2/eta2  <=>  cs1*eta2 ? cs2*eta1, eta > 0.
    const int s = sign3(cs1 * norm_exact(spec, s2), cs2 * norm_exact(spec, s1));
    return s < 0 ? RatioCmp::less : (s > 0 ? RatioCmp::greater : RatioCmp::equal);
  }
  if (spec.kind() == NormKind::l2) {
    // Both sides positive, so squaring preserves the order.
    const int s = sign3(cs1 * cs1 * l2_norm_squared(s2), cs2 * cs2 * l2_norm_squared(s1));
    return s < 0 ? RatioCmp::less : (s > 0 ? RatioCmp::greater : RatioCmp::equal);
  }
  for (mpfr_prec_t prec = 128; prec <= kRatioPrecisionBudget; prec *= 2) {
    MpfrInterval lhs = norm_interval(spec, s2, prec);
    lhs.mul(MpfrInterval::from_rat(cs1, prec));
    MpfrInterval rhs = norm_interval(spec, s1, prec);
    rhs.mul(MpfrInterval::from_rat(cs2, prec));
    if (lhs.certainly_less(rhs)) return RatioCmp::less;
    if (rhs.certainly_less(lhs)) return RatioCmp::greater;
  }
  return RatioCmp::uncertifiable;
}

NormSpec parse_norm_spec(const std::string& text,
                         const std::function<RMat(const std::string&)>& poly_loader) {
  if (text == "l1") return NormSpec::l1();
  if (text == "l2") return NormSpec::l2();
  if (text == "linf") return NormSpec::linf();
  if (text.rfind("lp:", 0) == 0) return NormSpec::lp(rat_from_string(text.substr(3)));
  if (text.rfind("wl1:", 0) == 0) {
    std::vector<Rat> parts;
    std::string rest = text.substr(4);
    std::size_t pos = 0;
    while (pos <= rest.size()) {
      const auto comma = rest.find(',', pos);
      const auto piece = rest.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      parts.push_back(rat_from_string(piece));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    RVec w(static_cast<int>(parts.size()));
    for (std::size_t i = 0; i < parts.size(); ++i) w(static_cast<int>(i)) = parts[i];
    return NormSpec::weighted_l1(std::move(w));
  }
  if (text.rfind("poly:", 0) == 0) {
    if (!poly_loader) fail(Errc::bad_input, "poly norm needs a file loader");
    const std::string path = text.substr(5);
    return NormSpec::polyhedral(poly_loader(path), path);
  }
  fail(Errc::bad_input, "unknown norm spec: '" + text + "'");
}

}  // namespace shadowlab

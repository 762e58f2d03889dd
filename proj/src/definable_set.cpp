#include "oag/definable_set.hpp"

#include <algorithm>
#include <sstream>

#include "oag/error.hpp"
#include "oag/qe.hpp"

namespace oag {

std::string Endpoint::to_string() const {
  switch (kind_) {
    case Kind::NegInf: return "-inf";
    case Kind::PosInf: return "inf";
    case Kind::Finite: return value_.to_string();
  }
  return {};
}

std::strong_ordering operator<=>(const Endpoint& a, const Endpoint& b) {
  if (a.kind_ != b.kind_) return static_cast<int>(a.kind_) <=> static_cast<int>(b.kind_);
  if (a.kind_ != Endpoint::Kind::Finite) return std::strong_ordering::equal;
  return a.value_ <=> b.value_;
}

namespace {

/// Real-line membership of x in a component list (no domain filtering).
bool covers_point(const std::vector<Component>& parts, const Scalar& x) {
  Endpoint e = Endpoint::finite(x);
  for (const auto& c : parts) {
    if (const auto* p = std::get_if<Point>(&c)) {
      if (p->value == x) return true;
    } else {
      const auto& iv = std::get<OpenInterval>(c);
      if (iv.lo < e && e < iv.hi) return true;
    }
  }
  return false;
}

/// Whether the open cell (lo, hi) lies inside some interval component.
bool covers_cell(const std::vector<Component>& parts, const Endpoint& lo, const Endpoint& hi) {
  for (const auto& c : parts)
    if (const auto* iv = std::get_if<OpenInterval>(&c); iv && iv->lo <= lo && hi <= iv->hi) return true;
  return false;
}

Endpoint cell_lo(const std::vector<Scalar>& bps, std::size_t i) {
  return i == 0 ? Endpoint::neg_inf() : Endpoint::finite(bps[i - 1]);
}

Endpoint cell_hi(const std::vector<Scalar>& bps, std::size_t i) {
  return i == bps.size() ? Endpoint::pos_inf() : Endpoint::finite(bps[i]);
}

std::vector<Scalar> sorted_unique(std::vector<Scalar> xs) {
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

template <class PointFn, class GapFn>
DefinableSet1D rebuild(const std::vector<Scalar>& bps, PointFn point_in, GapFn gap_in) {
  std::vector<bool> pts(bps.size());
  std::vector<bool> gaps(bps.size() + 1);
  for (std::size_t i = 0; i <= bps.size(); ++i) gaps[i] = gap_in(cell_lo(bps, i), cell_hi(bps, i));
  for (std::size_t i = 0; i < bps.size(); ++i) pts[i] = point_in(bps[i], i);
  return DefinableSet1D::from_cells(bps, pts, gaps);
}

}  // namespace

DefinableSet1D DefinableSet1D::full() { return DefinableSet1D({OpenInterval{Endpoint::neg_inf(), Endpoint::pos_inf()}}); }

DefinableSet1D DefinableSet1D::point(const Scalar& x) { return from_cells({x}, {true}, {false, false}); }

DefinableSet1D DefinableSet1D::open(const Endpoint& lo, const Endpoint& hi) {
  if (!(lo < hi)) return empty();
  return from_components({OpenInterval{lo, hi}});
}

DefinableSet1D DefinableSet1D::from_components(const std::vector<Component>& parts) {
  std::vector<Scalar> bps;
  for (const auto& c : parts) {
    if (const auto* p = std::get_if<Point>(&c)) {
      bps.push_back(p->value);
    } else {
      const auto& iv = std::get<OpenInterval>(c);
      if (iv.lo.is_finite()) bps.push_back(iv.lo.value());
      if (iv.hi.is_finite()) bps.push_back(iv.hi.value());
    }
  }
  bps = sorted_unique(std::move(bps));
  return rebuild(
      bps, [&](const Scalar& x, std::size_t) { return covers_point(parts, x); },
      [&](const Endpoint& lo, const Endpoint& hi) { return covers_cell(parts, lo, hi); });
}

DefinableSet1D DefinableSet1D::from_cells(const std::vector<Scalar>& bps, const std::vector<bool>& point_in,
                                          const std::vector<bool>& gap_in) {
  const std::size_t n = bps.size();
  if (point_in.size() != n || gap_in.size() != n + 1)
    throw Error(ErrorKind::Usage, "from_cells: membership vectors do not match the breakpoints");

  // Item sequence: gap 0, point 0, gap 1, ..., point n-1, gap n.
  // Irrational points are outside the domain: they only glue two member cells.
  auto item_in = [&](std::size_t k) {
    if (k % 2 == 0) return static_cast<bool>(gap_in[k / 2]);
    std::size_t i = k / 2;
    if (!bps[i].is_rational()) return gap_in[i] && gap_in[i + 1];
    return static_cast<bool>(point_in[i]);
  };
  auto boundary = [&](std::size_t gap_index, bool left) {
    return left ? cell_lo(bps, gap_index) : cell_hi(bps, gap_index);
  };

  std::vector<Component> out;
  const std::size_t items = 2 * n + 1;
  std::size_t k = 0;
  while (k < items) {
    if (!item_in(k)) {
      ++k;
      continue;
    }
    std::size_t j = k;
    while (j + 1 < items && item_in(j + 1)) ++j;
    if (j == k && k % 2 == 1) {
      out.push_back(Point{bps[k / 2]});
    } else {
      Endpoint lo = k % 2 == 0 ? boundary(k / 2, true) : Endpoint::finite(bps[k / 2]);
      Endpoint hi = j % 2 == 0 ? boundary(j / 2, false) : Endpoint::finite(bps[j / 2]);
      if (k % 2 == 1) out.push_back(Point{bps[k / 2]});
      out.push_back(OpenInterval{lo, hi});
      if (j % 2 == 1) out.push_back(Point{bps[j / 2]});
    }
    k = j + 1;
  }
  return DefinableSet1D(std::move(out));
}

bool DefinableSet1D::is_full() const {
  return parts_.size() == 1 && std::holds_alternative<OpenInterval>(parts_[0]) &&
         std::get<OpenInterval>(parts_[0]).lo.kind() == Endpoint::Kind::NegInf &&
         std::get<OpenInterval>(parts_[0]).hi.kind() == Endpoint::Kind::PosInf;
}

bool DefinableSet1D::contains(const Scalar& x) const { return x.is_rational() && covers_point(parts_, x); }

bool DefinableSet1D::is_finite_points() const {
  return std::all_of(parts_.begin(), parts_.end(), [](const Component& c) { return std::holds_alternative<Point>(c); });
}

std::vector<Scalar> DefinableSet1D::breakpoints() const {
  std::vector<Scalar> bps;
  for (const auto& c : parts_) {
    if (const auto* p = std::get_if<Point>(&c)) {
      bps.push_back(p->value);
    } else {
      const auto& iv = std::get<OpenInterval>(c);
      if (iv.lo.is_finite()) bps.push_back(iv.lo.value());
      if (iv.hi.is_finite()) bps.push_back(iv.hi.value());
    }
  }
  return sorted_unique(std::move(bps));
}

std::string DefinableSet1D::to_string() const {
  if (parts_.empty()) return "{}";
  std::ostringstream os;
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) os << " u ";
    if (const auto* p = std::get_if<Point>(&parts_[i])) {
      os << '{' << p->value.to_string() << '}';
    } else {
      const auto& iv = std::get<OpenInterval>(parts_[i]);
      os << '(' << iv.lo.to_string() << ", " << iv.hi.to_string() << ')';
    }
  }
  return os.str();
}

namespace {

template <class Op>
DefinableSet1D combine(const DefinableSet1D& a, const DefinableSet1D& b, Op op) {
  auto bps = a.breakpoints();
  auto more = b.breakpoints();
  bps.insert(bps.end(), more.begin(), more.end());
  bps = sorted_unique(std::move(bps));
  const auto& pa = a.components();
  const auto& pb = b.components();
  return rebuild(
      bps, [&](const Scalar& x, std::size_t) { return op(covers_point(pa, x), covers_point(pb, x)); },
      [&](const Endpoint& lo, const Endpoint& hi) { return op(covers_cell(pa, lo, hi), covers_cell(pb, lo, hi)); });
}

}  // namespace

DefinableSet1D complement(const DefinableSet1D& d) {
  const auto& p = d.components();
  return rebuild(
      d.breakpoints(), [&](const Scalar& x, std::size_t) { return !covers_point(p, x); },
      [&](const Endpoint& lo, const Endpoint& hi) { return !covers_cell(p, lo, hi); });
}

DefinableSet1D union_of(const DefinableSet1D& a, const DefinableSet1D& b) {
  return combine(a, b, [](bool x, bool y) { return x || y; });
}

DefinableSet1D intersect(const DefinableSet1D& a, const DefinableSet1D& b) {
  return combine(a, b, [](bool x, bool y) { return x && y; });
}

DefinableSet1D closure(const DefinableSet1D& d) {
  const auto& p = d.components();
  auto bps = d.breakpoints();
  return rebuild(
      bps,
      [&](const Scalar& x, std::size_t i) {
        return covers_point(p, x) || covers_cell(p, cell_lo(bps, i), cell_hi(bps, i)) ||
               covers_cell(p, cell_lo(bps, i + 1), cell_hi(bps, i + 1));
      },
      [&](const Endpoint& lo, const Endpoint& hi) { return covers_cell(p, lo, hi); });
}

DefinableSet1D interior(const DefinableSet1D& d) {
  const auto& p = d.components();
  auto bps = d.breakpoints();
  return rebuild(
      bps,
      [&](const Scalar& x, std::size_t i) {
        return covers_point(p, x) && covers_cell(p, cell_lo(bps, i), cell_hi(bps, i)) &&
               covers_cell(p, cell_lo(bps, i + 1), cell_hi(bps, i + 1));
      },
      [&](const Endpoint& lo, const Endpoint& hi) { return covers_cell(p, lo, hi); });
}

PseudoFiniteReport is_pseudo_finite(const DefinableSet1D& d) {
  PseudoFiniteReport r;
  r.discrete = d.is_finite_points();
  r.closed = closure(d) == d;
  r.bounded = true;
  for (const auto& c : d.components())
    if (const auto* iv = std::get_if<OpenInterval>(&c); iv && (!iv->lo.is_finite() || !iv->hi.is_finite()))
      r.bounded = false;
  r.verdict = r.discrete && r.closed && r.bounded;
  return r;
}

const char* to_string(CutReport::Kind k) {
  switch (k) {
    case CutReport::Kind::NotACut: return "not_a_cut";
    case CutReport::Kind::ProperCutWithLub: return "proper_cut_with_lub";
    case CutReport::Kind::Gap: return "gap";
    case CutReport::Kind::WholeGroup: return "whole_group";
  }
  return "unknown";
}

CutReport cut_analysis(const DefinableSet1D& d, const StructureSpec& s) {
  CutReport r;
  if (d.is_empty()) return r;
  if (d.is_full()) {
    r.kind = CutReport::Kind::WholeGroup;
    return r;
  }
  const auto& parts = d.components();
  const auto* first = std::get_if<OpenInterval>(&parts[0]);
  if (!first || first->lo.kind() != Endpoint::Kind::NegInf || !first->hi.is_finite()) return r;
  const Scalar& end = first->hi.value();
  bool downward_closed = parts.size() == 1 ||
                         (parts.size() == 2 && std::holds_alternative<Point>(parts[1]) &&
                          std::get<Point>(parts[1]).value == end);
  if (!downward_closed) return r;
  r.kind = s.in_domain(end) ? CutReport::Kind::ProperCutWithLub : CutReport::Kind::Gap;
  r.boundary = end;
  return r;
}

DefinableSet1D set_of(const Formula& f, const Var& x) {
  switch (f.kind()) {
    case FormulaKind::True: return DefinableSet1D::full();
    case FormulaKind::False: return DefinableSet1D::empty();
    case FormulaKind::Atom: {
      const Atom& a = f.atom();
      if (a.kind() == AtomKind::Pred)
        throw Error(ErrorKind::PredicateLeak, "unexpanded predicate " + a.pred_name());
      const LinearTerm& t = a.term();
      if (t.entries().size() > (t.mentions(x) ? 1u : 0u))
        throw Error(ErrorKind::MissingAssignment, "set_of: atom mentions variables other than " + x.name());
      Rational c = t.coeff(x);
      if (c.is_zero()) {
        int sign = t.constant().sign();
        bool holds = a.kind() == AtomKind::LessThanZero ? sign < 0 : sign == 0;
        return holds ? DefinableSet1D::full() : DefinableSet1D::empty();
      }
      Scalar root = -t.constant() / c;
      if (a.kind() == AtomKind::EqualsZero) return DefinableSet1D::point(root);
      return c.sign() > 0 ? DefinableSet1D::open(Endpoint::neg_inf(), Endpoint::finite(root))
                          : DefinableSet1D::open(Endpoint::finite(root), Endpoint::pos_inf());
    }
    case FormulaKind::Not: return complement(set_of(f.child(), x));
    case FormulaKind::Implies: return union_of(complement(set_of(f.child(0), x)), set_of(f.child(1), x));
    case FormulaKind::And: {
      DefinableSet1D acc = DefinableSet1D::full();
      for (const auto& c : f.children()) acc = intersect(acc, set_of(c, x));
      return acc;
    }
    case FormulaKind::Or: {
      DefinableSet1D acc;
      for (const auto& c : f.children()) acc = union_of(acc, set_of(c, x));
      return acc;
    }
    case FormulaKind::Exists:
    case FormulaKind::Forall: throw Error(ErrorKind::Usage, "set_of expects a quantifier-free formula");
  }
  return {};
}

DefinableSet1D normalize(const Formula& f, const StructureSpec& s) {
  auto free = free_vars_ordered(f);
  if (free.size() != 1)
    throw Error(ErrorKind::Usage, "normalize expects exactly one free variable, found " + std::to_string(free.size()));
  return normalize(f, free.front(), s);
}

DefinableSet1D normalize(const Formula& f, const Var& x, const StructureSpec& s) {
  return normalize(f, x, s, QeOptions{});
}

DefinableSet1D normalize(const Formula& f, const Var& x, const StructureSpec& s, const QeOptions& opts) {
  for (const auto& v : free_vars(f))
    if (v != x) throw Error(ErrorKind::Usage, "normalize: unexpected free variable " + v.name());
  return set_of(eliminate_all(f, s, opts).formula(), x);
}

std::optional<Rational> pick_element(const DefinableSet1D& d) {
  if (d.is_empty()) return std::nullopt;
  const Component& first = d.components().front();
  if (const auto* p = std::get_if<Point>(&first)) return p->value.rat_part();
  const auto& iv = std::get<OpenInterval>(first);
  if (iv.lo.is_finite() && iv.hi.is_finite()) return rational_between(iv.lo.value(), iv.hi.value());
  if (iv.hi.is_finite()) {
    const Scalar& e = iv.hi.value();
    return e.is_rational() ? e.rat_part() - 1 : e.floor() - 1;
  }
  if (iv.lo.is_finite()) {
    const Scalar& e = iv.lo.value();
    return e.is_rational() ? e.rat_part() + 1 : e.ceil() + 1;
  }
  return Rational(0);
}

}  // namespace oag

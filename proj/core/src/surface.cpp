#include "obk/surface.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

#include "obk/error.hpp"

namespace obk {

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

HomologyVector IntMatrix::apply(std::span<const Coeff> x) const {
  if (x.size() != cols_) {
    throw DimensionError("matrix has " + std::to_string(cols_) + " columns, vector has " +
                         std::to_string(x.size()) + " entries");
  }
  HomologyVector out(rows_, 0);
  for (std::size_t r = 0; r < rows_; ++r) {
    Coeff acc = 0;
    for (std::size_t c = 0; c < cols_; ++c) acc += (*this)(r, c) * x[c];
    out[r] = acc;
  }
  return out;
}

HomologyVector IntMatrix::column(std::size_t c) const {
  HomologyVector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw DimensionError("matrix product with mismatched inner dimension");
  IntMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Coeff aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

std::string BasisLabel::name() const {
  const char prefix = kind == Kind::handle_a ? 'a' : kind == Kind::handle_b ? 'b' : 'd';
  return prefix + std::to_string(index);
}

std::optional<BasisLabel> BasisLabel::parse(std::string_view text) {
  if (text.size() < 2) return std::nullopt;
  Kind kind;
  switch (text[0]) {
    case 'a': kind = Kind::handle_a; break;
    case 'b': kind = Kind::handle_b; break;
    case 'd': kind = Kind::boundary; break;
    default: return std::nullopt;
  }
  if (text[1] == '0') return std::nullopt;
  int index = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data() + 1, end, index);
  if (ec != std::errc() || ptr != end || index < 1) return std::nullopt;
  return BasisLabel{kind, index};
}

namespace {

constexpr std::string_view kCurveKindNames[] = {"link-component", "stabilization-curve", "boundary-parallel",
                                                "binding-label", "page-curve"};

}  // namespace

std::string_view to_string(CurveKind kind) { return kCurveKindNames[static_cast<int>(kind)]; }

std::optional<CurveKind> parse_curve_kind(std::string_view text) {
  for (int i = 0; i < 5; ++i) {
    if (kCurveKindNames[i] == text) return static_cast<CurveKind>(i);
  }
  return std::nullopt;
}

HomologyVector CurveRef::oriented_class() const {
  HomologyVector out = homology;
  if (orientation == Sign::negative) {
    for (auto& x : out) x = -x;
  }
  return out;
}

Surface Surface::make(int genus, int boundary_count) {
  if (genus < 0) throw DomainError("genus must be non-negative");
  if (boundary_count < 1) throw DomainError("a page needs at least one boundary component");
  Surface s;
  s.genus_ = genus;
  s.boundary_count_ = boundary_count;
  const std::size_t rank = s.rank();
  const std::size_t handle_dim = static_cast<std::size_t>(2 * genus);
  const std::size_t b = static_cast<std::size_t>(boundary_count);
  s.boundary_classes_.assign(b, HomologyVector(rank, 0));
  for (std::size_t k = 0; k + 1 < b; ++k) {
    s.boundary_classes_[k][handle_dim + k] = 1;
    s.boundary_classes_[b - 1][handle_dim + k] = -1;
  }
  s.boundary_expressions_.assign(b - 1, std::vector<Coeff>(b, 0));
  for (std::size_t i = 0; i + 1 < b; ++i) s.boundary_expressions_[i][i] = 1;
  return s;
}

namespace {

// Σ_k expr[k] · classes[k]
HomologyVector combine(const std::vector<HomologyVector>& classes, std::span<const Coeff> expr, std::size_t rank) {
  HomologyVector out(rank, 0);
  for (std::size_t k = 0; k < classes.size(); ++k) {
    if (expr[k] == 0) continue;
    for (std::size_t c = 0; c < rank; ++c) out[c] += expr[k] * classes[k][c];
  }
  return out;
}

}  // namespace

Surface Surface::from_tables(int genus, int boundary_count, std::vector<HomologyVector> boundary_classes,
                             std::vector<std::vector<Coeff>> boundary_expressions) {
  Surface s = make(genus, boundary_count);
  const std::size_t rank = s.rank();
  const std::size_t b = static_cast<std::size_t>(boundary_count);
  const std::size_t handle_dim = static_cast<std::size_t>(2 * genus);
  if (boundary_classes.size() != b) throw DomainError("boundary class table must have one row per component");
  if (boundary_expressions.size() != b - 1) throw DomainError("boundary expression table must have one row per d-class");
  HomologyVector total(rank, 0);
  for (const auto& v : boundary_classes) {
    if (v.size() != rank) throw DimensionError("boundary class has wrong length");
    for (std::size_t c = 0; c < rank; ++c) {
      if (c < handle_dim && v[c] != 0) throw DomainError("boundary class with handle coefficients");
      total[c] += v[c];
    }
  }
  if (std::any_of(total.begin(), total.end(), [](Coeff x) { return x != 0; })) {
    throw DomainError("boundary classes do not sum to zero");
  }
  for (std::size_t i = 0; i < boundary_expressions.size(); ++i) {
    if (boundary_expressions[i].size() != b) throw DimensionError("boundary expression has wrong length");
    HomologyVector v = combine(boundary_classes, boundary_expressions[i], rank);
    if (v != s.unit(handle_dim + i)) {
      throw DomainError("boundary expression of d" + std::to_string(i + 1) + " does not reproduce its class");
    }
  }
  s.boundary_classes_ = std::move(boundary_classes);
  s.boundary_expressions_ = std::move(boundary_expressions);
  return s;
}

std::vector<BasisLabel> Surface::basis() const {
  std::vector<BasisLabel> out;
  out.reserve(rank());
  for (std::size_t c = 0; c < rank(); ++c) out.push_back(label_at(c));
  return out;
}

BasisLabel Surface::label_at(std::size_t coordinate) const {
  const auto handle_dim = static_cast<std::size_t>(2 * genus_);
  if (coordinate < handle_dim) {
    const int index = static_cast<int>(coordinate / 2) + 1;
    return {coordinate % 2 == 0 ? BasisLabel::Kind::handle_a : BasisLabel::Kind::handle_b, index};
  }
  return {BasisLabel::Kind::boundary, static_cast<int>(coordinate - handle_dim) + 1};
}

std::optional<std::size_t> Surface::coordinate_of(const BasisLabel& label) const {
  const auto index = static_cast<std::size_t>(label.index);
  switch (label.kind) {
    case BasisLabel::Kind::handle_a:
      if (label.index <= genus_) return 2 * (index - 1);
      break;
    case BasisLabel::Kind::handle_b:
      if (label.index <= genus_) return 2 * (index - 1) + 1;
      break;
    case BasisLabel::Kind::boundary:
      if (label.index <= boundary_count_ - 1) return static_cast<std::size_t>(2 * genus_) + index - 1;
      break;
  }
  return std::nullopt;
}

HomologyVector Surface::unit(std::size_t coordinate) const {
  HomologyVector v(rank(), 0);
  v.at(coordinate) = 1;
  return v;
}

int euler_char(const Surface& s) { return s.euler_char(); }

void check_dimension(const Surface& s, std::span<const Coeff> v, std::string_view what) {
  if (v.size() != s.rank()) {
    throw DimensionError(std::string(what) + " has " + std::to_string(v.size()) + " coordinates, basis has " +
                         std::to_string(s.rank()));
  }
}

Coeff intersection(const Surface& s, std::span<const Coeff> x, std::span<const Coeff> y) {
  check_dimension(s, x, "left vector");
  check_dimension(s, y, "right vector");
  Coeff acc = 0;
  for (int i = 0; i < s.genus(); ++i) {
    const auto a = static_cast<std::size_t>(2 * i);
    acc += x[a] * y[a + 1] - x[a + 1] * y[a];
  }
  return acc;
}

HomologyVector twist_action(const Surface& s, const CurveRef& c, std::span<const Coeff> x, Sign sign) {
  check_dimension(s, c.homology, "twist curve " + c.id);
  const Coeff k = to_int(sign) * intersection(s, x, c.homology);
  HomologyVector out(x.begin(), x.end());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += k * c.homology[i];
  return out;
}

IntMatrix twist_matrix(const Surface& s, std::span<const Coeff> curve, Sign sign) {
  check_dimension(s, curve, "twist curve");
  const std::size_t n = s.rank();
  IntMatrix m = IntMatrix::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    const Coeff k = to_int(sign) * intersection(s, s.unit(col), curve);
    if (k == 0) continue;
    for (std::size_t row = 0; row < n; ++row) m(row, col) += k * curve[row];
  }
  return m;
}

namespace {

HandleAttachment attach_same_boundary(const Surface& s, std::size_t j) {
  const int g = s.genus();
  const int b = s.boundary_count();
  const std::size_t old_rank = s.rank();
  const auto old_b = static_cast<std::size_t>(b);

  HandleAttachment out{Surface::make(g, b + 1), IntMatrix(old_rank + 1, old_rank), old_rank, {}, old_b};
  for (std::size_t i = 0; i < old_rank; ++i) out.embedding(i, i) = 1;

  // New d-label κ = class of the split-off component. β'_j = β_j - κ.
  std::vector<HomologyVector> classes;
  classes.reserve(old_b + 1);
  for (const auto& beta : s.boundary_classes()) {
    HomologyVector v = beta;
    v.push_back(0);
    classes.push_back(std::move(v));
  }
  classes[j].back() -= 1;
  HomologyVector kappa(old_rank + 1, 0);
  kappa.back() = 1;
  classes.push_back(std::move(kappa));

  // Old β_j = β'_j + κ, so every old expression picks up its j-coefficient
  // on the new component as well.
  std::vector<std::vector<Coeff>> exprs;
  exprs.reserve(old_b);
  for (const auto& e : s.boundary_expressions()) {
    std::vector<Coeff> v = e;
    v.push_back(e[j]);
    exprs.push_back(std::move(v));
  }
  std::vector<Coeff> kappa_expr(old_b + 1, 0);
  kappa_expr.back() = 1;
  exprs.push_back(std::move(kappa_expr));

  out.surface = Surface::from_tables(g, b + 1, std::move(classes), std::move(exprs));
  out.component_map.resize(old_b);
  std::iota(out.component_map.begin(), out.component_map.end(), std::size_t{0});
  return out;
}

HandleAttachment attach_different_boundaries(const Surface& s, std::size_t j, std::size_t k) {
  const int g = s.genus();
  const int b = s.boundary_count();
  const auto old_b = static_cast<std::size_t>(b);
  const std::size_t merged = std::min(j, k);
  Surface next = Surface::make(g + 1, b - 1);
  const std::size_t new_rank = next.rank();
  const auto old_handle_dim = static_cast<std::size_t>(2 * g);
  const std::size_t a_new = old_handle_dim;
  const std::size_t core = old_handle_dim + 1;

  std::vector<std::size_t> component_map(old_b);
  {
    std::size_t next_index = 0;
    for (std::size_t i = 0; i < old_b; ++i) {
      if (i == j || i == k) {
        component_map[i] = merged;
        if (i == merged) ++next_index;
      } else {
        component_map[i] = next_index++;
      }
    }
  }

  // Image of each old boundary component's class in the new basis.
  const auto& new_classes = next.boundary_classes();
  std::vector<HomologyVector> image(old_b);
  for (std::size_t i = 0; i < old_b; ++i) {
    if (i == j) {
      image[i] = next.unit(a_new);
    } else if (i == k) {
      image[i] = new_classes[merged];
      image[i][a_new] -= 1;
    } else {
      image[i] = new_classes[component_map[i]];
    }
  }

  IntMatrix embedding(new_rank, s.rank());
  for (std::size_t c = 0; c < old_handle_dim; ++c) embedding(c, c) = 1;
  const auto& exprs = s.boundary_expressions();
  for (std::size_t d = 0; d < exprs.size(); ++d) {
    const HomologyVector col = combine(image, exprs[d], new_rank);
    for (std::size_t r = 0; r < new_rank; ++r) embedding(r, old_handle_dim + d) = col[r];
  }
  return HandleAttachment{std::move(next), std::move(embedding), core, std::move(component_map), std::nullopt};
}

}  // namespace

HandleAttachment attach_handle(const Surface& s, const HandleFeet& feet) {
  const auto b = static_cast<std::size_t>(s.boundary_count());
  if (feet.first >= b) throw DomainError("invalid boundary index " + std::to_string(feet.first));
  if (feet.is_same_boundary()) return attach_same_boundary(s, feet.first);
  const std::size_t k = *feet.second;
  if (k >= b) throw DomainError("invalid boundary index " + std::to_string(k));
  if (k == feet.first) throw DomainError("different-boundaries feet must name two distinct components");
  return attach_different_boundaries(s, feet.first, k);
}

}  // namespace obk

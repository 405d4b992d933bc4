#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace obk {

using Coeff = std::int64_t;
using HomologyVector = std::vector<Coeff>;

enum class Sign : int { negative = -1, positive = 1 };

inline int to_int(Sign s) { return static_cast<int>(s); }
inline Sign flip(Sign s) { return s == Sign::positive ? Sign::negative : Sign::positive; }
inline char sign_char(Sign s) { return s == Sign::positive ? '+' : '-'; }

/// Dense row-major integer matrix. Used for homology actions and basis
/// embeddings; sizes stay small (rank of H1 of a page).
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  static IntMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Coeff& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Coeff operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  HomologyVector apply(std::span<const Coeff> x) const;
  HomologyVector column(std::size_t c) const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Coeff> data_;
};

/// a_i / b_i are the symplectic handle classes, d_j the boundary-parallel
/// classes spanning the radical of the intersection form.
struct BasisLabel {
  enum class Kind { handle_a, handle_b, boundary };
  Kind kind;
  int index;  // 1-based

  std::string name() const;
  static std::optional<BasisLabel> parse(std::string_view text);
  friend bool operator==(const BasisLabel&, const BasisLabel&) = default;
};

enum class CurveKind { link_component, stabilization_curve, boundary_parallel, binding_label, page_curve };

std::string_view to_string(CurveKind kind);
std::optional<CurveKind> parse_curve_kind(std::string_view text);

/// A named curve on a page: its homology class (over the page basis) plus
/// placement metadata. The oriented class is `orientation * homology`.
struct CurveRef {
  std::string id;
  HomologyVector homology;
  CurveKind kind = CurveKind::page_curve;
  Sign orientation = Sign::positive;

  HomologyVector oriented_class() const;
  friend bool operator==(const CurveRef&, const CurveRef&) = default;
};

/// Combinatorial page Σ_{g,b}.
///
/// Coordinates are ordered a_1, b_1, ..., a_g, b_g, d_1, ..., d_{b-1}. The
/// d-classes form a basis of the boundary-parallel sublattice; they are not
/// required to be literal boundary components. Two tables tie them to the
/// boundary components:
///   * boundary_classes()[k]  the class of boundary component k (oriented as
///     the boundary of the page); these sum to zero.
///   * boundary_expressions()[i]  coefficients of d_i over the boundary
///     components, defined up to adding a constant to every entry.
/// Boundary components are indexed in binding order.
class Surface {
 public:
  /// Standard page: d_k is the class of boundary component k for k < b-1.
  static Surface make(int genus, int boundary_count);

  /// Rebuilds a surface from serialized tables; throws DomainError if the
  /// tables are inconsistent.
  static Surface from_tables(int genus, int boundary_count, std::vector<HomologyVector> boundary_classes,
                             std::vector<std::vector<Coeff>> boundary_expressions);

  int genus() const { return genus_; }
  int boundary_count() const { return boundary_count_; }
  int euler_char() const { return 2 - 2 * genus_ - boundary_count_; }

  std::size_t rank() const { return static_cast<std::size_t>(2 * genus_ + boundary_count_ - 1); }
  std::vector<BasisLabel> basis() const;
  BasisLabel label_at(std::size_t coordinate) const;
  std::optional<std::size_t> coordinate_of(const BasisLabel& label) const;
  bool is_boundary_coordinate(std::size_t coordinate) const {
    return coordinate >= static_cast<std::size_t>(2 * genus_);
  }

  HomologyVector zero() const { return HomologyVector(rank(), 0); }
  HomologyVector unit(std::size_t coordinate) const;

  const std::vector<HomologyVector>& boundary_classes() const { return boundary_classes_; }
  const std::vector<std::vector<Coeff>>& boundary_expressions() const { return boundary_expressions_; }

  friend bool operator==(const Surface&, const Surface&) = default;

 private:
  Surface() = default;

  int genus_ = 0;
  int boundary_count_ = 1;
  std::vector<HomologyVector> boundary_classes_;
  std::vector<std::vector<Coeff>> boundary_expressions_;
};

int euler_char(const Surface& s);

/// Algebraic intersection ⟨x, y⟩: ⟨a_i, b_i⟩ = +1, antisymmetric, d-classes central.
Coeff intersection(const Surface& s, std::span<const Coeff> x, std::span<const Coeff> y);

/// Transvection x ↦ x + sign·⟨x, c⟩·c. Positive = right-handed twist.
HomologyVector twist_action(const Surface& s, const CurveRef& c, std::span<const Coeff> x,
                            Sign sign = Sign::positive);

/// Matrix of twist_action on the basis (columns are images of basis vectors).
IntMatrix twist_matrix(const Surface& s, std::span<const Coeff> curve, Sign sign = Sign::positive);

struct HandleFeet {
  std::size_t first = 0;
  std::optional<std::size_t> second;  // absent: both feet on `first`

  static HandleFeet same_boundary(std::size_t j) { return {j, std::nullopt}; }
  static HandleFeet different_boundaries(std::size_t j, std::size_t k) { return {j, k}; }
  bool is_same_boundary() const { return !second.has_value(); }
};

struct HandleAttachment {
  Surface surface;
  /// new_rank x old_rank; maps old coordinates into the new basis. For
  /// same-boundary feet this is zero padding (new d-label appended last).
  IntMatrix embedding;
  /// Coordinate of the class running once over the handle (the closed-up
  /// core). A curve crosses the co-core once iff its coefficient here is ±1.
  std::size_t core_coordinate = 0;
  /// old boundary component -> new boundary component
  std::vector<std::size_t> component_map;
  /// same-boundary only: index of the boundary component split off by the handle
  std::optional<std::size_t> new_component;

  HomologyVector embed(std::span<const Coeff> old_vector) const { return embedding.apply(old_vector); }
};

/// Attaches a 1-handle. Same-boundary feet on component j split it in two
/// (new component appended last); different feet on j != k merge them (the
/// merged component takes the lower index) and add a handle pair a_{g+1}
/// (old class of component j) and b_{g+1} (core).
HandleAttachment attach_handle(const Surface& s, const HandleFeet& feet);

void check_dimension(const Surface& s, std::span<const Coeff> v, std::string_view what);

}  // namespace obk

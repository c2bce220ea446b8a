#pragma once

// Square-tiled translation surfaces. Squares are numbered 0..n-1 internally;
// sigma_h(i) is the square to the right of i, sigma_v(i) the square above.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "teich/sl2.hpp"

namespace teich {

using Perm = std::vector<int>;

struct VertexClass {
  std::vector<int> squares;  // squares whose bottom-left corner is this vertex, in cyclic order
  int kappa = 1;             // cone angle / 2 pi
  bool marked = false;       // part of the singular set Sigma
};

class Origami {
 public:
  /// Throws InvalidInput for mismatched or invalid permutations, a
  /// non-transitive pair, or det(deformation) <= 0.
  static Origami build(Perm sigma_h, Perm sigma_v,
                       const GroupElement& deformation = GroupElement::identity());

  int n() const { return static_cast<int>(h_.size()); }
  const Perm& sigma_h() const { return h_; }
  const Perm& sigma_v() const { return v_; }
  const Perm& sigma_h_inv() const { return hinv_; }
  const Perm& sigma_v_inv() const { return vinv_; }
  const GroupElement& deformation() const { return deformation_; }

  const std::vector<VertexClass>& vertex_classes() const { return classes_; }
  /// Vertex class of the bottom-left corner of square i.
  int class_of(int square) const { return corner_class_[static_cast<std::size_t>(square)]; }
  bool is_marked(int cls) const { return classes_[static_cast<std::size_t>(cls)].marked; }

  int genus() const { return genus_; }
  /// Cone orders of the marked classes, sorted decreasingly.
  std::vector<int> kappa() const;
  /// |Sigma|.
  int num_marked() const;
  /// dim H^1(M, Sigma; R) = 2g + |Sigma| - 1.
  int relative_dimension() const { return 2 * genus_ + num_marked() - 1; }

  /// Fingerprint of the combinatorics (sigma_h, sigma_v); equal for all
  /// deformations of the same square-tiled surface.
  std::uint64_t combinatorial_id() const { return id_; }

  /// Same combinatorics, deformation replaced by m * deformation.
  Origami apply(const GroupElement& m) const;

  /// Permutations as 1-based cycle strings, e.g. "(1 2)(3)".
  std::string describe() const;

 private:
  Perm h_, v_, hinv_, vinv_;
  GroupElement deformation_;
  std::vector<VertexClass> classes_;
  std::vector<int> corner_class_;
  int genus_ = 1;
  std::uint64_t id_ = 0;
};

/// Throws InvalidInput when det(m) <= 0.
Origami apply_element(const Origami& x, const GroupElement& m);

/// Parses "n; cycles of sigma_h; cycles of sigma_v[; a b c d]" with 1-based
/// cycle notation, e.g. "3; (1 2); (1 3); 1 0 0 1". Empty cycle fields mean
/// the identity.
Origami parse_origami(std::string_view text);

/// Permutation from 1-based cycle notation on n letters.
Perm parse_cycles(std::string_view cycles, int n);
std::string format_cycles(const Perm& p);

namespace origamis {
Origami torus();
/// Three squares, sigma_h = (1 2), sigma_v = (1 3): stratum H(2).
Origami l_shape();
}  // namespace origamis

}  // namespace teich

// Copyright 2026 The hetqec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HETQEC_CODE_HPP
#define HETQEC_CODE_HPP

#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hetqec/pauli.hpp"

namespace hetqec {

enum class Deformation { kCss, kXy };
enum class Region { kCorner, kEdge, kBulk };

std::string to_string(Deformation deformation);
Deformation parse_deformation(const std::string& text);
std::string to_string(Region region);

/// Bit vector with one 0/1 entry per stabilizer generator.
using Syndrome = std::vector<std::uint8_t>;

std::string syndrome_to_string(const Syndrome& s);
Syndrome parse_syndrome(const std::string& text);

struct QubitGeometry {
  int row = 0;
  int col = 0;
  int degree = 0;
  Region region = Region::kBulk;
};

/// A stabilizer generator attached to a lattice face. Face (r, c) covers the
/// data qubits in rows r..r+1 and columns c..c+1 that exist; boundary faces
/// use r or c equal to -1 or d-1.
struct Stabilizer {
  PauliOp op;
  int face_row = 0;
  int face_col = 0;
  /// X or Z: the letter of the undeformed CSS check.
  Letter css_type = Letter::X;
};

struct QubitPartition {
  std::vector<std::size_t> bulk;
  std::vector<std::size_t> edge;
  std::vector<std::size_t> corner;
};

/// A validated rotated surface code. Instances are immutable once built;
/// build_css() and apply_xy_deformation() are the only producers.
class CodeInstance {
 public:
  int distance() const { return d_; }
  std::size_t num_qubits() const { return static_cast<std::size_t>(d_) * d_; }
  std::size_t num_stabilizers() const { return stabilizers_.size(); }
  Deformation deformation() const { return deformation_; }

  const std::vector<Stabilizer>& stabilizers() const { return stabilizers_; }
  const PauliOp& logical_x() const { return logical_x_; }
  const PauliOp& logical_z() const { return logical_z_; }
  /// Alternate representatives on the opposite boundaries: logical_x on
  /// column d-1 and logical_z on row d-1.
  const PauliOp& logical_x_far() const { return logical_x_far_; }
  const PauliOp& logical_z_far() const { return logical_z_far_; }
  const std::vector<PauliOp>& destabilizers() const { return destabilizers_; }
  const std::vector<QubitGeometry>& geometry() const { return geometry_; }

  std::size_t qubit_index(int row, int col) const { return static_cast<std::size_t>(row) * d_ + col; }

  /// Representative of a logical class built from logical_x and logical_z
  /// (see frame_letter).
  PauliOp logical_representative(Letter logical_class) const;

  /// Throws ValidationError when any structural invariant is violated.
  void validate() const;

 private:
  friend CodeInstance build_css(int d);
  friend CodeInstance apply_xy_deformation(const CodeInstance& code);

  int d_ = 0;
  Deformation deformation_ = Deformation::kCss;
  std::vector<Stabilizer> stabilizers_;
  PauliOp logical_x_;
  PauliOp logical_z_;
  PauliOp logical_x_far_;
  PauliOp logical_z_far_;
  std::vector<PauliOp> destabilizers_;
  std::vector<QubitGeometry> geometry_;
};

/// Rotated CSS surface code of odd distance d >= 3.
CodeInstance build_css(int d);

/// Conjugates every qubit by the Clifford fixing X and swapping Z and Y.
CodeInstance apply_xy_deformation(const CodeInstance& code);

/// Convenience: build_css followed by the deformation when requested.
CodeInstance build_code(int d, Deformation deformation);

Syndrome syndrome(const CodeInstance& code, const PauliOp& error);

/// Product of destabilizers selected by s; its syndrome is exactly s.
PauliOp pure_error(const CodeInstance& code, const Syndrome& s);

/// Logical coset of a zero-syndrome operator. Frame bits: x = anticommutes
/// with logical_z, z = anticommutes with logical_x. Classes are named by the
/// letters of the code's own logicals, so on the XY code the Y-string
/// logical_z is Y_L and the all-Z product logical_x * logical_z is Z_L.
Letter logical_class(const CodeInstance& code, const PauliOp& residual);

/// Class name of the frame bits (see logical_class).
Letter class_from_frame_bits(const CodeInstance& code, bool x, bool z);

/// Frame letter (x bit: logical_x factor, z bit: logical_z factor) of a
/// class; an involution, the identity on CSS codes.
Letter frame_letter(const CodeInstance& code, Letter logical_class);

QubitPartition classify_qubits(const CodeInstance& code);

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Rational make(std::int64_t num, std::int64_t den);
  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string to_string() const;
  friend bool operator==(const Rational&, const Rational&) = default;
};

/// Closed form 4(d-1)/(3d-2).
Rational stabilizer_ratio(int d);

/// Bulk-average degree over boundary-average degree, counted from the
/// constructed lattice.
Rational census_stabilizer_ratio(const CodeInstance& code);

inline constexpr int kNoPureLogical = std::numeric_limits<int>::max();

struct PauliDistances {
  int dx = kNoPureLogical;
  int dy = kNoPureLogical;
  int dz = kNoPureLogical;
};

/// Minimum weight of a nontrivial logical using a single letter, by
/// exhaustive search. Only d <= 5.
PauliDistances pauli_distances(const CodeInstance& code);

/// JSON description: stabilizers with face coordinates, logicals, degrees
/// and the stabilizer ratio.
nlohmann::json describe(const CodeInstance& code);

}  // namespace hetqec

#endif  // HETQEC_CODE_HPP

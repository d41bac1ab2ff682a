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

#include "hetqec/code.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>

#include "hetqec/errors.hpp"

namespace hetqec {

std::string to_string(Deformation deformation) {
  return deformation == Deformation::kCss ? "CSS" : "XY";
}

Deformation parse_deformation(const std::string& text) {
  std::string lower;
  for (char c : text) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (lower == "css") return Deformation::kCss;
  if (lower == "xy") return Deformation::kXy;
  throw ParameterError("unknown deformation '" + text + "' (expected css or xy)");
}

std::string to_string(Region region) {
  switch (region) {
    case Region::kCorner: return "corner";
    case Region::kEdge: return "edge";
    case Region::kBulk: return "bulk";
  }
  return "?";
}

std::string syndrome_to_string(const Syndrome& s) {
  std::string out(s.size(), '0');
  for (std::size_t i = 0; i < s.size(); ++i) out[i] = s[i] ? '1' : '0';
  return out;
}

Syndrome parse_syndrome(const std::string& text) {
  Syndrome s(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '0' && text[i] != '1') throw ParameterError("syndrome must be a 0/1 string");
    s[i] = text[i] == '1';
  }
  return s;
}

namespace {

bool is_valid_distance(int d) { return d >= 3 && d % 2 == 1; }

/// GF(2) row-reduction over packed rows. Returns the pivot column of each
/// row in order; rows are reduced in place to RREF.
std::vector<std::size_t> row_reduce(std::vector<std::vector<std::uint64_t>>& rows, std::size_t num_cols) {
  std::vector<std::size_t> pivots;
  std::size_t next = 0;
  for (std::size_t col = 0; col < num_cols && next < rows.size(); ++col) {
    const std::size_t w = col >> 6;
    const std::uint64_t mask = std::uint64_t{1} << (col & 63);
    std::size_t found = next;
    while (found < rows.size() && !(rows[found][w] & mask)) ++found;
    if (found == rows.size()) continue;
    std::swap(rows[found], rows[next]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r != next && (rows[r][w] & mask)) {
        for (std::size_t k = 0; k < rows[r].size(); ++k) rows[r][k] ^= rows[next][k];
      }
    }
    pivots.push_back(col);
    ++next;
  }
  return pivots;
}

/// Destabilizers t_i with form(t_i, g_j) = [i == j], reduced so that each
/// also commutes with both logical representatives.
std::vector<PauliOp> compute_destabilizers(const std::vector<Stabilizer>& stabs, const PauliOp& lx,
                                           const PauliOp& lz, std::size_t n) {
  const std::size_t m = stabs.size();
  const std::size_t cols = 2 * n + m;
  const std::size_t words = (cols + 63) / 64;
  // Row i encodes the functional t -> form(t, g_i) = t_x . g_z + t_z . g_x,
  // augmented with e_i to track the row transform.
  std::vector<std::vector<std::uint64_t>> rows(m, std::vector<std::uint64_t>(words, 0));
  auto set = [](std::vector<std::uint64_t>& row, std::size_t c) { row[c >> 6] |= std::uint64_t{1} << (c & 63); };
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t q = 0; q < n; ++q) {
      if (stabs[i].op.z(q)) set(rows[i], q);
      if (stabs[i].op.x(q)) set(rows[i], n + q);
    }
    set(rows[i], 2 * n + i);
  }
  const auto pivots = row_reduce(rows, 2 * n);
  if (pivots.size() != m) {
    throw ValidationError("stabilizer generators are dependent: rank " + std::to_string(pivots.size()) +
                          " < " + std::to_string(m));
  }
  auto get = [](const std::vector<std::uint64_t>& row, std::size_t c) { return (row[c >> 6] >> (c & 63)) & 1u; };
  std::vector<PauliOp> out;
  out.reserve(m);
  for (std::size_t j = 0; j < m; ++j) {
    PauliOp t(n);
    for (std::size_t k = 0; k < m; ++k) {
      if (!get(rows[k], 2 * n + j)) continue;
      const std::size_t c = pivots[k];
      const std::size_t q = c < n ? c : c - n;
      const bool xb = c < n ? t.x(q) ^ true : t.x(q);
      const bool zb = c < n ? t.z(q) : t.z(q) ^ true;
      t.set_letter(q, letter_from_bits(xb, zb));
    }
    if (symplectic_form(t, lz)) t *= lx;
    if (symplectic_form(t, lx)) t *= lz;
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<QubitGeometry> compute_geometry(int d, const std::vector<Stabilizer>& stabs) {
  std::vector<QubitGeometry> geo(static_cast<std::size_t>(d) * d);
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) {
      auto& g = geo[static_cast<std::size_t>(r) * d + c];
      g.row = r;
      g.col = c;
    }
  }
  for (const auto& s : stabs) {
    for (std::size_t q = 0; q < geo.size(); ++q) {
      if (s.op.letter_at(q) != Letter::I) ++geo[q].degree;
    }
  }
  for (auto& g : geo) {
    g.region = g.degree == 4 ? Region::kBulk : g.degree == 3 ? Region::kEdge : Region::kCorner;
  }
  return geo;
}

PauliOp deform(const PauliOp& op) {
  PauliOp out(op.num_qubits());
  for (std::size_t q = 0; q < op.num_qubits(); ++q) {
    const bool x = op.x(q), z = op.z(q);
    out.set_letter(q, letter_from_bits(x != z, z));
  }
  return out;
}

}  // namespace

PauliOp CodeInstance::logical_representative(Letter logical_class) const {
  const Letter frame = frame_letter(*this, logical_class);
  PauliOp out(num_qubits());
  if (x_bit(frame)) out *= logical_x_;
  if (z_bit(frame)) out *= logical_z_;
  return out;
}

void CodeInstance::validate() const {
  const std::size_t n = num_qubits();
  const std::size_t m = stabilizers_.size();
  auto fail = [](const std::string& what) { throw ValidationError("code validation failed: " + what); };
  if (!is_valid_distance(d_)) fail("invalid distance");
  if (m != n - 1) fail("expected d^2-1 stabilizers");
  for (std::size_t i = 0; i < m; ++i) {
    if (stabilizers_[i].op.num_qubits() != n) fail("stabilizer size");
    for (std::size_t j = i + 1; j < m; ++j) {
      if (!commutes(stabilizers_[i].op, stabilizers_[j].op)) fail("stabilizers do not commute");
    }
  }
  for (const PauliOp* l : {&logical_x_, &logical_z_, &logical_x_far_, &logical_z_far_}) {
    for (const auto& s : stabilizers_) {
      if (!commutes(*l, s.op)) fail("logical does not commute with a stabilizer");
    }
  }
  if (commutes(logical_x_, logical_z_)) fail("logical_x and logical_z commute");
  // Far representatives must lie in the same cosets as the near ones.
  if (!commutes(logical_x_far_, logical_x_) || commutes(logical_x_far_, logical_z_)) fail("logical_x_far class");
  if (commutes(logical_z_far_, logical_x_) || !commutes(logical_z_far_, logical_z_)) fail("logical_z_far class");
  if (destabilizers_.size() != m) fail("destabilizer count");
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (symplectic_form(destabilizers_[i], stabilizers_[j].op) != (i == j)) fail("destabilizer pairing");
    }
  }
  // Rank check: a fresh elimination throws on dependence.
  (void)compute_destabilizers(stabilizers_, logical_x_, logical_z_, n);
  std::map<int, std::size_t> hist;
  std::size_t degree_sum = 0, weight_sum = 0;
  for (const auto& g : geometry_) {
    ++hist[g.degree];
    degree_sum += static_cast<std::size_t>(g.degree);
  }
  for (const auto& s : stabilizers_) weight_sum += s.op.weight();
  const std::size_t k = static_cast<std::size_t>(d_ - 2);
  if (hist[4] != k * k || hist[3] != 4 * k || hist[2] != 4 || hist.size() != 3) fail("degree histogram");
  if (degree_sum != weight_sum) fail("degree sum");
  if (deformation_ == Deformation::kXy) {
    for (const auto& s : stabilizers_) {
      for (std::size_t q = 0; q < n; ++q) {
        if (s.op.letter_at(q) == Letter::Z) fail("XY stabilizer carries a Z letter");
      }
    }
  }
}

CodeInstance build_css(int d) {
  if (!is_valid_distance(d)) {
    throw ParameterError("code distance must be odd and >= 3, got " + std::to_string(d));
  }
  CodeInstance code;
  code.d_ = d;
  code.deformation_ = Deformation::kCss;
  const std::size_t n = static_cast<std::size_t>(d) * d;

  auto add_face = [&](int fr, int fc, Letter type) {
    std::vector<std::size_t> support;
    for (int r = fr; r <= fr + 1; ++r) {
      for (int c = fc; c <= fc + 1; ++c) {
        if (r >= 0 && r < d && c >= 0 && c < d) support.push_back(static_cast<std::size_t>(r) * d + c);
      }
    }
    code.stabilizers_.push_back(Stabilizer{PauliOp::uniform(n, support, type), fr, fc, type});
  };
  // Faces in row-major order of their (face_row, face_col), boundaries
  // included. The checkerboard colour is X on even (fr + fc).
  for (int fr = -1; fr <= d - 1; ++fr) {
    for (int fc = -1; fc <= d - 1; ++fc) {
      const bool interior = fr >= 0 && fr <= d - 2 && fc >= 0 && fc <= d - 2;
      const bool x_type = ((fr + fc) % 2 + 2) % 2 == 0;
      if (interior) {
        add_face(fr, fc, x_type ? Letter::X : Letter::Z);
      } else if ((fr == -1 || fr == d - 1) && fc >= 0 && fc <= d - 2 && x_type) {
        add_face(fr, fc, Letter::X);
      } else if ((fc == -1 || fc == d - 1) && fr >= 0 && fr <= d - 2 && !x_type) {
        add_face(fr, fc, Letter::Z);
      }
    }
  }
  std::vector<std::size_t> col0, col_last, row0, row_last;
  for (int i = 0; i < d; ++i) {
    col0.push_back(code.qubit_index(i, 0));
    col_last.push_back(code.qubit_index(i, d - 1));
    row0.push_back(code.qubit_index(0, i));
    row_last.push_back(code.qubit_index(d - 1, i));
  }
  code.logical_x_ = PauliOp::uniform(n, col0, Letter::X);
  code.logical_z_ = PauliOp::uniform(n, row0, Letter::Z);
  code.logical_x_far_ = PauliOp::uniform(n, col_last, Letter::X);
  code.logical_z_far_ = PauliOp::uniform(n, row_last, Letter::Z);
  code.destabilizers_ = compute_destabilizers(code.stabilizers_, code.logical_x_, code.logical_z_, n);
  code.geometry_ = compute_geometry(d, code.stabilizers_);
  code.validate();
  return code;
}

CodeInstance apply_xy_deformation(const CodeInstance& code) {
  if (code.deformation_ != Deformation::kCss) {
    throw ParameterError("XY deformation applies to CSS codes only");
  }
  CodeInstance out = code;
  out.deformation_ = Deformation::kXy;
  for (auto& s : out.stabilizers_) s.op = deform(s.op);
  out.logical_x_ = deform(code.logical_x_);
  out.logical_z_ = deform(code.logical_z_);
  out.logical_x_far_ = deform(code.logical_x_far_);
  out.logical_z_far_ = deform(code.logical_z_far_);
  for (auto& t : out.destabilizers_) t = deform(t);
  out.validate();
  return out;
}

CodeInstance build_code(int d, Deformation deformation) {
  CodeInstance css = build_css(d);
  return deformation == Deformation::kXy ? apply_xy_deformation(css) : css;
}

Syndrome syndrome(const CodeInstance& code, const PauliOp& error) {
  if (error.num_qubits() != code.num_qubits()) {
    throw DimensionError("error acts on " + std::to_string(error.num_qubits()) + " qubits, code has " +
                         std::to_string(code.num_qubits()));
  }
  Syndrome s(code.num_stabilizers());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = symplectic_form(error, code.stabilizers()[i].op);
  return s;
}

PauliOp pure_error(const CodeInstance& code, const Syndrome& s) {
  if (s.size() != code.num_stabilizers()) {
    throw DimensionError("syndrome length " + std::to_string(s.size()) + ", expected " +
                         std::to_string(code.num_stabilizers()));
  }
  PauliOp out(code.num_qubits());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i]) out *= code.destabilizers()[i];
  }
  return out;
}

Letter logical_class(const CodeInstance& code, const PauliOp& residual) {
  const Syndrome s = syndrome(code, residual);
  if (std::any_of(s.begin(), s.end(), [](std::uint8_t b) { return b != 0; })) {
    throw PreconditionError("logical_class requires a zero-syndrome operator");
  }
  const bool x_part = symplectic_form(residual, code.logical_z());
  const bool z_part = symplectic_form(residual, code.logical_x());
  return class_from_frame_bits(code, x_part, z_part);
}

Letter frame_letter(const CodeInstance& code, Letter logical_class) {
  if (code.deformation() == Deformation::kXy && logical_class != Letter::I && logical_class != Letter::X) {
    return logical_class == Letter::Y ? Letter::Z : Letter::Y;
  }
  return logical_class;
}

Letter class_from_frame_bits(const CodeInstance& code, bool x, bool z) {
  return frame_letter(code, letter_from_bits(x, z));
}

QubitPartition classify_qubits(const CodeInstance& code) {
  QubitPartition out;
  const auto& geo = code.geometry();
  for (std::size_t q = 0; q < geo.size(); ++q) {
    switch (geo[q].region) {
      case Region::kBulk: out.bulk.push_back(q); break;
      case Region::kEdge: out.edge.push_back(q); break;
      case Region::kCorner: out.corner.push_back(q); break;
    }
  }
  return out;
}

Rational Rational::make(std::int64_t num, std::int64_t den) {
  if (den == 0) throw ParameterError("zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  return Rational{num / g, den / g};
}

std::string Rational::to_string() const { return std::to_string(num) + "/" + std::to_string(den); }

Rational stabilizer_ratio(int d) {
  if (!is_valid_distance(d)) throw ParameterError("stabilizer_ratio needs odd d >= 3");
  return Rational::make(4 * (static_cast<std::int64_t>(d) - 1), 3 * static_cast<std::int64_t>(d) - 2);
}

Rational census_stabilizer_ratio(const CodeInstance& code) {
  std::int64_t bulk_sum = 0, bulk_count = 0, boundary_sum = 0, boundary_count = 0;
  for (const auto& g : code.geometry()) {
    if (g.region == Region::kBulk) {
      bulk_sum += g.degree;
      ++bulk_count;
    } else {
      boundary_sum += g.degree;
      ++boundary_count;
    }
  }
  return Rational::make(bulk_sum * boundary_count, bulk_count * boundary_sum);
}

PauliDistances pauli_distances(const CodeInstance& code) {
  if (code.distance() > 5) {
    throw UnsupportedError("pauli_distances enumerates 2^n supports; d <= 5 only");
  }
  const std::size_t n = code.num_qubits();
  const std::size_t m = code.num_stabilizers();
  auto search = [&](Letter letter) {
    // signature bit i < m: anticommutes with stabilizer i; bits m, m+1:
    // anticommutes with logical_z / logical_x.
    std::vector<std::uint64_t> sig(n, 0);
    for (std::size_t q = 0; q < n; ++q) {
      PauliOp single(n);
      single.set_letter(q, letter);
      for (std::size_t i = 0; i < m; ++i) {
        if (symplectic_form(single, code.stabilizers()[i].op)) sig[q] |= std::uint64_t{1} << i;
      }
      if (symplectic_form(single, code.logical_z())) sig[q] |= std::uint64_t{1} << m;
      if (symplectic_form(single, code.logical_x())) sig[q] |= std::uint64_t{1} << (m + 1);
    }
    const std::uint64_t syndrome_mask = (std::uint64_t{1} << m) - 1;
    int best = kNoPureLogical;
    std::uint64_t acc = 0;
    int w = 0;
    std::uint64_t subset = 0;
    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t i = 1; i < total; ++i) {
      const int bit = std::countr_zero(i);
      subset ^= std::uint64_t{1} << bit;
      w += (subset >> bit) & 1u ? 1 : -1;
      acc ^= sig[static_cast<std::size_t>(bit)];
      if ((acc & syndrome_mask) == 0 && (acc >> m) != 0 && w < best) best = w;
    }
    return best;
  };
  return PauliDistances{search(Letter::X), search(Letter::Y), search(Letter::Z)};
}

nlohmann::json describe(const CodeInstance& code) {
  using nlohmann::json;
  json stabs = json::array();
  for (const auto& s : code.stabilizers()) {
    stabs.push_back({{"face", {s.face_row, s.face_col}},
                     {"css_type", std::string(1, letter_char(s.css_type))},
                     {"weight", s.op.weight()},
                     {"pauli", s.op.to_string()}});
  }
  json qubits = json::array();
  std::map<std::string, int> hist;
  for (const auto& g : code.geometry()) {
    qubits.push_back({{"row", g.row}, {"col", g.col}, {"degree", g.degree}, {"region", to_string(g.region)}});
    ++hist[std::to_string(g.degree)];
  }
  const Rational r = stabilizer_ratio(code.distance());
  const Rational census = census_stabilizer_ratio(code);
  return json{{"d", code.distance()},
              {"n", code.num_qubits()},
              {"deformation", to_string(code.deformation())},
              {"num_stabilizers", code.num_stabilizers()},
              {"stabilizers", stabs},
              {"logical_x", code.logical_x().to_string()},
              {"logical_z", code.logical_z().to_string()},
              {"qubits", qubits},
              {"degree_histogram", hist},
              {"stabilizer_ratio", {{"closed_form", r.to_string()}, {"census", census.to_string()}}}};
}

}  // namespace hetqec

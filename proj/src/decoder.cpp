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

#include "hetqec/decoder.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <utility>

#include "hetqec/errors.hpp"

namespace hetqec {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

std::vector<Letter> letters_of(const PauliOp& op) {
  std::vector<Letter> out(op.num_qubits());
  for (std::size_t q = 0; q < out.size(); ++q) out[q] = op.letter_at(q);
  return out;
}

/// Running log(sum(exp(x))) that tolerates -inf terms.
class LogSumExp {
 public:
  void add(double x) {
    if (x == kNegInf) return;
    if (x > max_) {
      sum_ = sum_ * std::exp(max_ - x) + 1.0;
      max_ = x;
    } else {
      sum_ += std::exp(x - max_);
    }
  }
  double value() const { return max_ == kNegInf ? kNegInf : max_ + std::log(sum_); }

 private:
  double max_ = kNegInf;
  double sum_ = 0.0;
};

}  // namespace

std::string to_string(DecodeMethod method) { return method == DecodeMethod::kExact ? "exact" : "tn"; }

DecodeMethod parse_decode_method(const std::string& text) {
  if (text == "exact") return DecodeMethod::kExact;
  if (text == "tn") return DecodeMethod::kTn;
  throw ParameterError("unknown decode method '" + text + "' (expected exact or tn)");
}

Letter choose_class(const CosetLikelihoods& likelihoods) {
  const auto& lp = likelihoods.log_pi;
  const double top = *std::max_element(lp.begin(), lp.end());
  for (std::size_t l = 0; l < 4; ++l) {
    if (lp[l] == top || (std::isfinite(top) && lp[l] >= top - kTieTolerance)) return static_cast<Letter>(l);
  }
  return Letter::I;
}

Decoder::Decoder(const CodeInstance& code, const NoiseModel& model) : code_(code) {
  const int d = code_.distance();
  const std::size_t n = code_.num_qubits();
  if (model.num_qubits() != n) {
    throw DimensionError("noise model has " + std::to_string(model.num_qubits()) + " qubits, code has " +
                         std::to_string(n));
  }
  probs_.resize(n);
  for (std::size_t q = 0; q < n; ++q) probs_[q] = model.letter_probs(q);

  std::map<std::pair<int, int>, std::size_t> faces;
  for (std::size_t g = 0; g < code_.num_stabilizers(); ++g) {
    const auto& st = code_.stabilizers()[g];
    faces[{st.face_row, st.face_col}] = g;
  }
  auto face_at = [&](int fr, int fc) -> int {
    auto it = faces.find({fr, fc});
    return it == faces.end() ? -1 : static_cast<int>(it->second);
  };

  sites_.resize(static_cast<std::size_t>(columns() * rows()));
  for (int u = 0; u < columns(); ++u) {
    for (int vi = 0; vi < rows(); ++vi) {
      const int v = vi - (d - 1);
      Site& s = sites_[static_cast<std::size_t>(u * rows() + vi)];
      if (((u + v) & 1) == 0) {
        const int r = (u + v) / 2, c = (u - v) / 2;
        if (r >= 0 && r < d && c >= 0 && c < d) s = Site{Site::kQubit, code_.qubit_index(r, c)};
      } else {
        const int g = face_at((u - 1 + v) / 2, (u - 1 - v) / 2);
        if (g >= 0) s = Site{Site::kFace, static_cast<std::size_t>(g)};
      }
    }
  }

  legs_.resize(n);
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) {
      const std::size_t q = code_.qubit_index(r, c);
      const std::array<std::pair<int, int>, 4> adj{{{r - 1, c}, {r - 1, c - 1}, {r, c}, {r, c - 1}}};
      for (std::size_t k = 0; k < 4; ++k) {
        const int g = face_at(adj[k].first, adj[k].second);
        legs_[q].stab[k] = g;
        if (g >= 0) legs_[q].letter[k] = code_.stabilizers()[static_cast<std::size_t>(g)].op.letter_at(q);
      }
    }
  }
}

std::size_t Decoder::horizontal_extent(int u, int vi) const {
  if (u < 0 || u + 1 >= columns()) return 1;
  return site(u, vi).kind != Site::kEmpty && site(u + 1, vi).kind != Site::kEmpty ? 2 : 1;
}

std::size_t Decoder::vertical_extent(int u, int vi) const {
  if (vi < 0 || vi + 1 >= rows()) return 1;
  return site(u, vi).kind != Site::kEmpty && site(u, vi + 1).kind != Site::kEmpty ? 2 : 1;
}

MpoColumn Decoder::column(int u, const std::vector<Letter>& base, bool reversed) const {
  MpoColumn col;
  col.reserve(static_cast<std::size_t>(rows()));
  for (int vi = 0; vi < rows(); ++vi) {
    const std::size_t up = vertical_extent(u, vi - 1), in = horizontal_extent(u - 1, vi),
                      out = horizontal_extent(u, vi), down = vertical_extent(u, vi);
    DenseTensor w(reversed ? std::vector<std::size_t>{up, out, in, down} : std::vector<std::size_t>{up, in, out, down});
    const Site& s = site(u, vi);
    for (std::size_t a = 0; a < up; ++a) {
      for (std::size_t i = 0; i < in; ++i) {
        for (std::size_t o = 0; o < out; ++o) {
          for (std::size_t b = 0; b < down; ++b) {
            double value = 1.0;
            if (s.kind == Site::kQubit) {
              const QubitLegs& lg = legs_[s.index];
              Letter l = base[s.index];
              if (a) l = l * lg.letter[0];
              if (i) l = l * lg.letter[1];
              if (o) l = l * lg.letter[2];
              if (b) l = l * lg.letter[3];
              value = probs_[s.index][static_cast<std::size_t>(l)];
            } else if (s.kind == Site::kFace) {
              int seen = -1;
              bool equal = true;
              const std::array<std::pair<std::size_t, std::size_t>, 4> legs{{{a, up}, {i, in}, {o, out}, {b, down}}};
              for (auto [idx, ext] : legs) {
                if (ext < 2) continue;
                if (seen < 0) {
                  seen = static_cast<int>(idx);
                } else if (seen != static_cast<int>(idx)) {
                  equal = false;
                }
              }
              value = equal ? 1.0 : 0.0;
            }
            const std::size_t off = reversed ? ((a * out + o) * in + i) * down + b : ((a * in + i) * out + o) * down + b;
            w[off] = value;
          }
        }
      }
    }
    col.push_back(std::move(w));
  }
  return col;
}

CosetLikelihoods Decoder::tn(const Syndrome& s, std::size_t chi, SvdBackend backend) const {
  if (chi < 1) throw ParameterError("bond cap chi must be >= 1");
  const std::vector<Letter> e = letters_of(pure_error(code_, s));
  const std::vector<Letter> lx = letters_of(code_.logical_x());
  const std::vector<Letter> lz = letters_of(code_.logical_z_far());
  const std::size_t n = e.size();
  auto with = [&](bool x, bool z) {
    std::vector<Letter> b = e;
    for (std::size_t q = 0; q < n; ++q) {
      if (x) b[q] = b[q] * lx[q];
      if (z) b[q] = b[q] * lz[q];
    }
    return b;
  };

  const int mid = code_.distance() - 1;
  CosetLikelihoods out;
  out.method = DecodeMethod::kTn;
  out.chi = chi;
  std::array<BoundaryMPS, 2> left, right;
  for (int bit = 0; bit < 2; ++bit) {
    const std::vector<Letter> lb = with(bit != 0, false);
    left[bit] = BoundaryMPS::trivial(static_cast<std::size_t>(rows()));
    for (int u = 0; u < mid; ++u) {
      out.discarded_weight += apply_column(left[bit], column(u, lb, false), chi, backend).discarded_weight;
    }
    const std::vector<Letter> rb = with(false, bit != 0);
    right[bit] = BoundaryMPS::trivial(static_cast<std::size_t>(rows()));
    for (int u = columns() - 1; u > mid; --u) {
      out.discarded_weight += apply_column(right[bit], column(u, rb, true), chi, backend).discarded_weight;
    }
  }
  for (int x = 0; x < 2; ++x) {
    for (int z = 0; z < 2; ++z) {
      const ScaledValue v = close_column(left[x], column(mid, with(x != 0, z != 0), false), right[z]);
      out.log_pi[static_cast<std::size_t>(class_from_frame_bits(code_, x != 0, z != 0))] = v.log_value();
    }
  }
  return out;
}

std::size_t Decoder::exact_bond_extent() const {
  const std::vector<Letter> base(code_.num_qubits(), Letter::I);
  const int mid = code_.distance() - 1;
  std::size_t best = 1;
  BoundaryMPS left = BoundaryMPS::trivial(static_cast<std::size_t>(rows()));
  for (int u = 0; u < mid; ++u) best = std::max(best, apply_column(left, column(u, base, false), kUncappedBond).max_bond);
  BoundaryMPS right = BoundaryMPS::trivial(static_cast<std::size_t>(rows()));
  for (int u = columns() - 1; u > mid; --u) {
    best = std::max(best, apply_column(right, column(u, base, true), kUncappedBond).max_bond);
  }
  return best;
}

CosetLikelihoods Decoder::exact(const Syndrome& s, bool allow_large) const {
  const int d = code_.distance();
  if (d > 5 || (d == 5 && !allow_large)) {
    throw PreconditionError("exact enumeration supports d = 3, or d = 5 with explicit opt-in; got d = " +
                            std::to_string(d));
  }
  const std::size_t n = code_.num_qubits();
  const std::size_t k = code_.num_stabilizers();
  std::vector<std::array<double, 4>> logp(n);
  for (std::size_t q = 0; q < n; ++q) {
    for (std::size_t l = 0; l < 4; ++l) logp[q][l] = probs_[q][l] > 0.0 ? std::log(probs_[q][l]) : kNegInf;
  }
  std::vector<std::vector<std::pair<std::size_t, Letter>>> support(k);
  for (std::size_t g = 0; g < k; ++g) {
    const PauliOp& op = code_.stabilizers()[g].op;
    for (std::size_t q = 0; q < n; ++q) {
      const Letter l = op.letter_at(q);
      if (l != Letter::I) support[g].emplace_back(q, l);
    }
  }

  const PauliOp e = pure_error(code_, s);
  CosetLikelihoods out;
  out.method = DecodeMethod::kExact;
  for (std::size_t cls = 0; cls < 4; ++cls) {
    std::vector<Letter> cur = letters_of(e * code_.logical_representative(static_cast<Letter>(cls)));
    int zeros = 0;
    long double sum = 0.0L;
    auto add = [&](std::size_t q, double sign) {
      const double v = logp[q][static_cast<std::size_t>(cur[q])];
      if (v == kNegInf) {
        zeros += sign > 0 ? 1 : -1;
      } else {
        sum += sign * v;
      }
    };
    for (std::size_t q = 0; q < n; ++q) add(q, 1.0);
    LogSumExp acc;
    acc.add(zeros > 0 ? kNegInf : static_cast<double>(sum));
    const std::uint64_t total = std::uint64_t{1} << k;
    for (std::uint64_t i = 1; i < total; ++i) {
      const auto g = static_cast<std::size_t>(std::countr_zero(i));
      for (auto [q, l] : support[g]) {
        add(q, -1.0);
        cur[q] = cur[q] * l;
        add(q, 1.0);
      }
      acc.add(zeros > 0 ? kNegInf : static_cast<double>(sum));
    }
    out.log_pi[cls] = acc.value();
  }
  return out;
}

Correction Decoder::decode(const Syndrome& s, const DecodeOptions& options) const {
  Correction c;
  c.likelihoods = options.method == DecodeMethod::kExact ? exact(s, options.allow_large_exact)
                                                         : tn(s, options.chi, options.backend);
  c.chosen_class = choose_class(c.likelihoods);
  c.op = pure_error(code_, s) * code_.logical_representative(c.chosen_class);
  return c;
}

CosetLikelihoods exact_coset_likelihoods(const CodeInstance& code, const NoiseModel& model, const Syndrome& s,
                                         bool allow_large) {
  return Decoder(code, model).exact(s, allow_large);
}

CosetLikelihoods tn_coset_likelihoods(const CodeInstance& code, const NoiseModel& model, const Syndrome& s,
                                      std::size_t chi) {
  return Decoder(code, model).tn(s, chi);
}

Correction decode(const CodeInstance& code, const NoiseModel& model, const Syndrome& s,
                  const DecodeOptions& options) {
  return Decoder(code, model).decode(s, options);
}

}  // namespace hetqec

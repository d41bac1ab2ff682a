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

#include "hetqec/plot.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <tuple>

#include <fmt/format.h>

#include "hetqec/errors.hpp"
#include "hetqec/rng.hpp"

namespace hetqec {

namespace {

constexpr double kWidth = 720, kHeight = 480;
constexpr double kLeft = 80, kRight = 180, kTop = 50, kBottom = 60;
const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                                "#8c564b", "#e377c2", "#17becf", "#7f7f7f", "#bcbd22"};

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::vector<double> linear_ticks(double lo, double hi) {
  const double span = hi - lo;
  const double raw = span / 6.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (m * mag >= raw) {
      step = m * mag;
      break;
    }
  }
  std::vector<double> t;
  for (double v = std::ceil(lo / step) * step; v <= hi + 1e-12 * span; v += step) t.push_back(std::abs(v) < 1e-14 ? 0.0 : v);
  return t;
}

/// Group key shared by the result rows of one curve family.
using FamilyKey = std::tuple<std::string, std::string, std::string, std::string, std::string, std::size_t>;

std::string family_label(const FamilyKey& k, bool with_placement) {
  const auto& [regime, placement, def, eta_low, eta_high, chi] = k;
  std::string s = fmt::format("{} {}", regime, def);
  if (with_placement && placement != "none") s += " " + placement;
  s += eta_low == eta_high ? fmt::format(" eta={}", eta_low) : fmt::format(" eta={}/{}", eta_low, eta_high);
  return s + fmt::format(" chi={}", chi);
}

}  // namespace

PlotKind parse_plot_kind(const std::string& text) {
  if (text == "failure-vs-p") return PlotKind::kFailureVsP;
  if (text == "ratio-vs-d") return PlotKind::kRatioVsD;
  if (text == "disaggregated") return PlotKind::kDisaggregated;
  throw ParameterError("unknown plot kind '" + text + "' (expected failure-vs-p, ratio-vs-d or disaggregated)");
}

std::string to_string(PlotKind kind) {
  switch (kind) {
    case PlotKind::kFailureVsP: return "failure-vs-p";
    case PlotKind::kRatioVsD: return "ratio-vs-d";
    case PlotKind::kDisaggregated: return "disaggregated";
  }
  return "failure-vs-p";
}

std::string content_hash(const std::string& bytes) {
  std::uint64_t h = 0x6a09e667f3bcc908ULL;
  for (unsigned char c : bytes) h = mix64(h ^ c);
  return fmt::format("{:016x}", h);
}

std::string render_svg(const PlotSpec& spec) {
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const auto& s : spec.series) {
    for (const auto& p : s.points) {
      xmin = std::min(xmin, p.x);
      xmax = std::max(xmax, p.x);
      for (double v : {p.y, p.lo, p.hi}) {
        if (spec.log_y && !(v > 0.0)) continue;
        if (!std::isfinite(v)) continue;
        ymin = std::min(ymin, v);
        ymax = std::max(ymax, v);
      }
    }
  }
  if (!std::isfinite(xmin) || !std::isfinite(ymin)) throw ParameterError("nothing to plot");
  if (xmax == xmin) {
    xmin -= 0.5;
    xmax += 0.5;
  }
  const double xpad = 0.05 * (xmax - xmin);
  xmin -= xpad;
  xmax += xpad;
  double ylo, yhi;
  if (spec.log_y) {
    ylo = std::floor(std::log10(ymin));
    yhi = std::ceil(std::log10(ymax));
    if (yhi == ylo) yhi += 1;
  } else {
    const double pad = ymax == ymin ? 0.5 : 0.05 * (ymax - ymin);
    ylo = ymin - pad;
    yhi = ymax + pad;
  }
  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  auto sx = [&](double x) { return kLeft + (x - xmin) / (xmax - xmin) * pw; };
  auto sy = [&](double y) {
    const double t = spec.log_y ? std::log10(std::max(y, std::pow(10.0, ylo))) : y;
    return kTop + (yhi - t) / (yhi - ylo) * ph;
  };

  std::string o;
  o += fmt::format("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\" "
                   "font-family=\"sans-serif\" font-size=\"12\">\n",
                   kWidth, kHeight, kWidth, kHeight);
  if (!spec.tag.empty()) o += fmt::format("<!-- data {} -->\n", escape(spec.tag));
  o += fmt::format("<rect x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"white\"/>\n", kWidth, kHeight);
  o += fmt::format("<text x=\"{:.1f}\" y=\"25\" text-anchor=\"middle\" font-size=\"15\">{}</text>\n", kLeft + pw / 2,
                   escape(spec.title));
  o += fmt::format("<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"black\"/>\n", kLeft, kTop, pw, ph);

  for (double t : linear_ticks(xmin, xmax)) {
    const double x = sx(t);
    o += fmt::format("<line x1=\"{0:.1f}\" y1=\"{1:.1f}\" x2=\"{0:.1f}\" y2=\"{2:.1f}\" stroke=\"#ddd\"/>\n", x, kTop, kTop + ph);
    o += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\">{}</text>\n", x, kTop + ph + 18, fmt::format("{:.4g}", t));
  }
  if (spec.log_y) {
    for (int e = static_cast<int>(ylo); e <= static_cast<int>(yhi); ++e) {
      const double y = sy(std::pow(10.0, e));
      o += fmt::format("<line x1=\"{0:.1f}\" y1=\"{1:.1f}\" x2=\"{2:.1f}\" y2=\"{1:.1f}\" stroke=\"#ddd\"/>\n", kLeft, y, kLeft + pw);
      o += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"end\">1e{}</text>\n", kLeft - 6, y + 4, e);
    }
  } else {
    for (double t : linear_ticks(ylo, yhi)) {
      const double y = sy(t);
      o += fmt::format("<line x1=\"{0:.1f}\" y1=\"{1:.1f}\" x2=\"{2:.1f}\" y2=\"{1:.1f}\" stroke=\"#ddd\"/>\n", kLeft, y, kLeft + pw);
      o += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"end\">{}</text>\n", kLeft - 6, y + 4, fmt::format("{:.4g}", t));
    }
  }
  o += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\">{}</text>\n", kLeft + pw / 2, kHeight - 15,
                   escape(spec.x_label));
  o += fmt::format("<text x=\"20\" y=\"{:.1f}\" text-anchor=\"middle\" transform=\"rotate(-90 20 {:.1f})\">{}</text>\n",
                   kTop + ph / 2, kTop + ph / 2, escape(spec.y_label));

  for (std::size_t i = 0; i < spec.series.size(); ++i) {
    const auto& s = spec.series[i];
    const char* color = kPalette[i % std::size(kPalette)];
    std::string path;
    for (const auto& p : s.points) {
      if (spec.log_y && !(p.y > 0.0)) continue;
      path += fmt::format("{}{:.1f},{:.1f}", path.empty() ? "" : " ", sx(p.x), sy(p.y));
    }
    if (!path.empty()) {
      o += fmt::format("<polyline points=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\"/>\n", path, color);
    }
    for (const auto& p : s.points) {
      const double x = sx(p.x);
      if (std::isfinite(p.hi) && (!spec.log_y || p.hi > 0.0)) {
        o += fmt::format("<line x1=\"{0:.1f}\" y1=\"{1:.1f}\" x2=\"{0:.1f}\" y2=\"{2:.1f}\" stroke=\"{3}\"/>\n", x,
                         sy(p.lo), sy(p.hi), color);
      }
      if (spec.log_y && !(p.y > 0.0)) continue;
      o += fmt::format("<circle cx=\"{:.1f}\" cy=\"{:.1f}\" r=\"3.5\" fill=\"{}\" stroke=\"{}\"/>\n", x, sy(p.y),
                       p.bound ? "white" : color, color);
    }
    const double ly = kTop + 14 + 18 * static_cast<double>(i);
    o += fmt::format("<line x1=\"{0:.1f}\" y1=\"{1:.1f}\" x2=\"{2:.1f}\" y2=\"{1:.1f}\" stroke=\"{3}\" stroke-width=\"2\"/>\n",
                     kLeft + pw + 10, ly, kLeft + pw + 30, color);
    o += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" font-size=\"11\">{}</text>\n", kLeft + pw + 35, ly + 4, escape(s.name));
  }
  o += "</svg>\n";
  return o;
}

PlotSpec build_plot(const std::vector<ExperimentPoint>& points, PlotKind kind) {
  if (points.empty()) throw ParameterError("empty selection: no rows to plot");
  PlotSpec spec;
  std::map<FamilyKey, std::vector<const ExperimentPoint*>> families;
  for (const auto& p : points) {
    families[{p.regime, p.placement, to_string(p.deformation), p.eta_low, p.eta_high, p.chi}].push_back(&p);
  }

  switch (kind) {
    case PlotKind::kFailureVsP: {
      spec.title = "Logical failure rate";
      spec.x_label = points.front().regime == "A" ? "p_noisy" : "p";
      spec.y_label = "p_fail";
      for (const auto& [key, rows] : families) {
        std::map<int, PlotSeries> by_d;
        for (const auto* r : rows) {
          const Interval w = r->wilson();
          auto& s = by_d[r->d];
          s.points.push_back({r->p, r->p_fail(), w.lo, w.hi, r->tally.failures() == 0});
        }
        for (auto& [d, s] : by_d) {
          std::sort(s.points.begin(), s.points.end(), [](const auto& a, const auto& b) { return a.x < b.x; });
          s.name = families.size() == 1 ? fmt::format("d={}", d) : fmt::format("{} d={}", family_label(key, true), d);
          spec.series.push_back(std::move(s));
        }
      }
      break;
    }
    case PlotKind::kRatioVsD: {
      spec.title = "Improvement ratio BoundaryNoisy / BulkNoisy";
      spec.x_label = "d";
      spec.y_label = "p_L ratio";
      // Pair the two placements within each (regime, bias, p, chi).
      std::map<std::tuple<std::string, std::string, std::string, std::string, double, std::size_t>,
               std::pair<std::vector<ExperimentPoint>, std::vector<ExperimentPoint>>>
          pairs;
      for (const auto& p : points) {
        auto& slot = pairs[{p.regime, to_string(p.deformation), p.eta_low, p.eta_high, p.p, p.chi}];
        if (p.placement == "BoundaryNoisy") slot.first.push_back(p);
        if (p.placement == "BulkNoisy") slot.second.push_back(p);
      }
      for (const auto& [key, pr] : pairs) {
        if (pr.first.empty() || pr.second.empty()) continue;
        const RatioSeries rs = improvement_ratio(pr.first, pr.second);
        PlotSeries s;
        const auto& [regime, def, eta_low, eta_high, p, chi] = key;
        s.name = eta_low == eta_high ? fmt::format("eta={} p={}", eta_low, p) : fmt::format("eta={}/{} p={}", eta_low, eta_high, p);
        for (const auto& e : rs.entries) {
          if (!std::isfinite(e.ratio)) continue;
          s.points.push_back({static_cast<double>(e.d), e.ratio, e.ci.lo, e.ci.hi, e.kind != BoundKind::kEstimate});
        }
        if (!s.points.empty()) spec.series.push_back(std::move(s));
      }
      break;
    }
    case PlotKind::kDisaggregated: {
      spec.title = "Disaggregated logical error rates";
      spec.x_label = "d";
      spec.y_label = "logical error rate";
      for (const auto& [key, rows] : families) {
        std::map<double, std::vector<const ExperimentPoint*>> by_p;
        for (const auto* r : rows) by_p[r->p].push_back(r);
        for (const auto& [p, prow] : by_p) {
          for (int cls = 0; cls < 3; ++cls) {
            PlotSeries s;
            const char* name = cls == 0 ? "X_L" : cls == 1 ? "Y_L" : "Z_L";
            s.name = families.size() == 1 && by_p.size() == 1 ? name : fmt::format("{} p={} {}", family_label(key, true), p, name);
            for (const auto* r : prow) {
              const std::uint64_t k = cls == 0 ? r->tally.fail_x : cls == 1 ? r->tally.fail_y : r->tally.fail_z;
              const Interval w = wilson_interval(k, r->tally.trials);
              s.points.push_back({static_cast<double>(r->d), static_cast<double>(k) / static_cast<double>(r->tally.trials),
                                  w.lo, w.hi, k == 0});
            }
            std::sort(s.points.begin(), s.points.end(), [](const auto& a, const auto& b) { return a.x < b.x; });
            spec.series.push_back(std::move(s));
          }
        }
      }
      break;
    }
  }
  if (spec.series.empty()) throw ParameterError("empty selection: no series to plot");
  return spec;
}

}  // namespace hetqec

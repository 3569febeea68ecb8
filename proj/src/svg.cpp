#include "fstl/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace fstl {

namespace {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return buf;
}

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

struct Box {
  double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
  void grow(double x, double y) {
    xmin = std::min(xmin, x);
    xmax = std::max(xmax, x);
    ymin = std::min(ymin, y);
    ymax = std::max(ymax, y);
  }
};

// Maps data coordinates into a W x H canvas, y axis pointing up.
struct Mapper {
  Box box;
  double W, H, margin;
  double sx() const { return (W - 2 * margin) / (box.xmax - box.xmin); }
  double sy() const { return (H - 2 * margin) / (box.ymax - box.ymin); }
  double x(double v) const { return margin + (v - box.xmin) * sx(); }
  double y(double v) const { return H - margin - (v - box.ymin) * sy(); }
};

std::string polyline(const std::vector<std::pair<double, double>>& pts, const Mapper& m,
                     const std::string& color, double width, bool dashed = false) {
  std::string s = "<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"" + fmt(width) +
                  "\"";
  if (dashed) s += " stroke-dasharray=\"6,4\"";
  s += " points=\"";
  for (const auto& [px, py] : pts) s += fmt(m.x(px)) + "," + fmt(m.y(py)) + " ";
  s += "\"/>\n";
  return s;
}

}  // namespace

void write_trajectory_svg(const std::string& path, const std::vector<const Trajectory*>& runs,
                          const std::vector<std::string>& run_labels, const PredicateTable& table) {
  Box box;
  bool first = true;
  for (const Trajectory* run : runs)
    for (const Eigen::VectorXd& x : run->state) {
      if (first) {
        box = Box{x[0], x[0], x[1], x[1]};
        first = false;
      } else {
        box.grow(x[0], x[1]);
      }
    }
  for (int i = 0; i < table.size(); ++i) {
    const Predicate& p = table.at(i);
    if (p.shape == Predicate::Shape::Halfplane) continue;
    box.grow(p.center[0] - p.scalar, p.center[1] - p.scalar);
    box.grow(p.center[0] + p.scalar, p.center[1] + p.scalar);
  }
  const double pad = 0.05 * std::max(box.xmax - box.xmin, box.ymax - box.ymin) + 1e-6;
  box.xmin -= pad;
  box.xmax += pad;
  box.ymin -= pad;
  box.ymax += pad;

  const double W = 640;
  // Equal data aspect: height follows the data box.
  const double H = std::clamp(W * (box.ymax - box.ymin) / (box.xmax - box.xmin), 160.0, 1600.0);
  Mapper m{box, W, H, 24};

  std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(W) + "\" height=\"" +
                    fmt(H) + "\" viewBox=\"0 0 " + fmt(W) + " " + fmt(H) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  const double rscale = std::min(std::abs(m.sx()), std::abs(m.sy()));
  for (int i = 0; i < table.size(); ++i) {
    const Predicate& p = table.at(i);
    if (p.shape == Predicate::Shape::Halfplane) {
      // Draw the boundary line n.p = b clipped roughly to the box diagonal.
      const Eigen::Vector2d n = p.center;
      const Eigen::Vector2d base = n * p.scalar;
      const Eigen::Vector2d tang(-n[1], n[0]);
      const double span = 2.0 * std::max(box.xmax - box.xmin, box.ymax - box.ymin);
      svg += polyline({{base[0] - span * tang[0], base[1] - span * tang[1]},
                       {base[0] + span * tang[0], base[1] + span * tang[1]}},
                      m, "#999999", 1.0, true);
      continue;
    }
    const bool inside = p.shape == Predicate::Shape::CircleInside;
    svg += "<circle cx=\"" + fmt(m.x(p.center[0])) + "\" cy=\"" + fmt(m.y(p.center[1])) +
           "\" r=\"" + fmt(p.scalar * rscale) + "\" fill=\"" +
           (inside ? "#2ca02c22" : "#d6272822") + "\" stroke=\"" +
           (inside ? "#2ca02c" : "#d62728") + "\" stroke-width=\"1.5\"/>\n";
    svg += "<text x=\"" + fmt(m.x(p.center[0])) + "\" y=\"" + fmt(m.y(p.center[1])) +
           "\" font-size=\"11\" text-anchor=\"middle\" fill=\"#555555\">" + p.name + "</text>\n";
  }

  for (size_t r = 0; r < runs.size(); ++r) {
    const Trajectory& run = *runs[r];
    std::vector<std::pair<double, double>> pts;
    pts.reserve(run.state.size());
    for (const Eigen::VectorXd& x : run.state) pts.emplace_back(x[0], x[1]);
    const std::string color = kPalette[r % 8];
    svg += polyline(pts, m, color, 1.5);
    if (!pts.empty()) {
      svg += "<circle cx=\"" + fmt(m.x(pts.front().first)) + "\" cy=\"" +
             fmt(m.y(pts.front().second)) + "\" r=\"3\" fill=\"" + color + "\"/>\n";
      const std::string label = r < run_labels.size() ? run_labels[r] : "";
      if (!label.empty())
        svg += "<text x=\"" + fmt(m.x(pts.front().first) + 5) + "\" y=\"" +
               fmt(m.y(pts.front().second) - 5) + "\" font-size=\"11\" fill=\"" + color + "\">" +
               label + "</text>\n";
    }
  }
  svg += "</svg>\n";

  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << svg;
}

void write_robustness_svg(const std::string& path, const Trajectory& traj,
                          const std::vector<std::string>& task_names) {
  const size_t M = task_names.size();
  const double W = 640, panelH = 200, gap = 16;
  const double H = M * panelH + (M + 1) * gap;

  std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(W) + "\" height=\"" +
                    fmt(H) + "\" viewBox=\"0 0 " + fmt(W) + " " + fmt(H) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  for (size_t i = 0; i < M; ++i) {
    Box box;
    bool first = true;
    for (int k = 0; k < traj.rows(); ++k) {
      const TaskSample& s = traj.tasks[k][i];
      for (double v : {s.rho, s.gamma, s.Gamma}) {
        if (first) {
          box = Box{traj.t[k], traj.t[k], v, v};
          first = false;
        } else {
          box.grow(traj.t[k], v);
        }
      }
    }
    const double padY = 0.08 * (box.ymax - box.ymin) + 1e-6;
    box.ymin -= padY;
    box.ymax += padY;

    const double top = gap + i * (panelH + gap);
    Mapper m{box, W, panelH, 28};

    std::vector<std::pair<double, double>> rho, gamma, Gamma;
    for (int k = 0; k < traj.rows(); ++k) {
      const TaskSample& s = traj.tasks[k][i];
      rho.emplace_back(traj.t[k], s.rho);
      gamma.emplace_back(traj.t[k], s.gamma);
      Gamma.emplace_back(traj.t[k], s.Gamma);
    }

    svg += "<g transform=\"translate(0," + fmt(top) + ")\">\n";
    svg += "<rect x=\"0.5\" y=\"0.5\" width=\"" + fmt(W - 1) + "\" height=\"" + fmt(panelH - 1) +
           "\" fill=\"none\" stroke=\"#cccccc\"/>\n";
    if (box.ymin < 0.0 && box.ymax > 0.0)
      svg += polyline({{box.xmin, 0.0}, {box.xmax, 0.0}}, m, "#dddddd", 1.0);
    svg += polyline(gamma, m, "#d62728", 1.2, true);
    svg += polyline(Gamma, m, "#2ca02c", 1.2, true);
    svg += polyline(rho, m, "#1f77b4", 1.6);
    svg += "<text x=\"32\" y=\"16\" font-size=\"12\" fill=\"#333333\">" + task_names[i] +
           ": rho (solid), gamma/Gamma (dashed)</text>\n";
    svg += "<text x=\"32\" y=\"" + fmt(panelH - 8) + "\" font-size=\"10\" fill=\"#888888\">t in [" +
           fmt(box.xmin) + ", " + fmt(box.xmax) + "] s, y in [" + fmt(box.ymin) + ", " +
           fmt(box.ymax) + "]</text>\n";
    svg += "</g>\n";
  }
  svg += "</svg>\n";

  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << svg;
}

}  // namespace fstl

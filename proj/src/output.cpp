#include "bevholt/output.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "bevholt/errors.hpp"

namespace bevholt {

const char* to_string(OutputKind k) {
  switch (k) {
    case OutputKind::csv: return "csv";
    case OutputKind::plot_data: return "plot-data";
    case OutputKind::svg: return "svg";
  }
  return "?";
}

const char* file_extension(OutputKind k) {
  switch (k) {
    case OutputKind::csv: return ".csv";
    case OutputKind::plot_data: return ".dat";
    case OutputKind::svg: return ".svg";
  }
  return "";
}

void atomic_write(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

namespace {

constexpr double kWidth = 960.0;
constexpr double kHeight = 540.0;
constexpr double kMargin = 50.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                          "#8c564b", "#e377c2", "#17becf"};

std::string fmt(double v) { return render_double(std::round(v * 100.0) / 100.0); }

}  // namespace

std::string svg_text(const std::vector<std::vector<double>>& strands, Index order) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  Index total = 0;
  for (const auto& s : strands) {
    total += s.size();
    for (double v : s) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  if (total == 0) {
    lo = 0.0;
    hi = 1.0;
  }
  if (hi == lo) {
    hi += 0.5;
    lo -= 0.5;
  }
  double n_max = total > 1 ? static_cast<double>(total - 1) : 1.0;
  auto x_of = [&](double n) { return kMargin + (kWidth - 2 * kMargin) * n / n_max; };
  auto y_of = [&](double v) { return kHeight - kMargin - (kHeight - 2 * kMargin) * (v - lo) / (hi - lo); };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(kWidth) + "\" height=\"" +
         fmt(kHeight) + "\" viewBox=\"0 0 " + fmt(kWidth) + " " + fmt(kHeight) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  // axes
  svg += "<line x1=\"" + fmt(kMargin) + "\" y1=\"" + fmt(kHeight - kMargin) + "\" x2=\"" +
         fmt(kWidth - kMargin) + "\" y2=\"" + fmt(kHeight - kMargin) +
         "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  svg += "<line x1=\"" + fmt(kMargin) + "\" y1=\"" + fmt(kMargin) + "\" x2=\"" + fmt(kMargin) +
         "\" y2=\"" + fmt(kHeight - kMargin) + "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  svg += "<text x=\"" + fmt(kWidth - kMargin) + "\" y=\"" + fmt(kHeight - kMargin + 30) +
         "\" text-anchor=\"end\" font-size=\"14\">n = " + render_double(n_max) + "</text>\n";
  svg += "<text x=\"" + fmt(kMargin - 8) + "\" y=\"" + fmt(kHeight - kMargin) +
         "\" text-anchor=\"end\" font-size=\"14\">" + render_double(lo) + "</text>\n";
  svg += "<text x=\"" + fmt(kMargin - 8) + "\" y=\"" + fmt(kMargin + 4) +
         "\" text-anchor=\"end\" font-size=\"14\">" + render_double(hi) + "</text>\n";

  for (Index j = 0; j < strands.size(); ++j) {
    const auto& s = strands[j];
    if (s.empty()) continue;
    std::string pts;
    for (Index m = 0; m < s.size(); ++m) {
      double n = static_cast<double>(m * order + j);
      pts += fmt(x_of(n)) + "," + fmt(y_of(s[m])) + " ";
    }
    svg += "<polyline fill=\"none\" stroke=\"";
    svg += kPalette[j % (sizeof kPalette / sizeof *kPalette)];
    svg += "\" stroke-width=\"1.2\" points=\"" + pts + "\"/>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace bevholt

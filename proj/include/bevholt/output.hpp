#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "bevholt/scalar.hpp"
#include "bevholt/trajectory.hpp"

namespace bevholt {

enum class OutputKind { csv, plot_data, svg };

const char* to_string(OutputKind k);
const char* file_extension(OutputKind k);

/// Writes content to path atomically (temp file + rename).
void atomic_write(const std::filesystem::path& path, const std::string& content);

/// CSV with header "n,z", one row per defined index, LF line endings.
/// Exact rationals render as p/q, floats as shortest round-trip decimals.
template <class T>
std::string csv_text(const Trajectory<T>& traj) {
  std::string out = "n,z\n";
  for (Index n = 0; n < traj.size(); ++n) {
    out += std::to_string(n);
    out += ',';
    out += scalar_traits<T>::render(traj.values[n]);
    out += '\n';
  }
  return out;
}

/// Two-column whitespace-separated "n z" plot data, values as decimals.
template <class T>
std::string plot_data_text(const Trajectory<T>& traj) {
  std::string out;
  for (Index n = 0; n < traj.size(); ++n) {
    out += std::to_string(n);
    out += ' ';
    if constexpr (scalar_traits<T>::backend == Backend::cplx) {
      out += render_double(traj.values[n].real());
      out += ' ';
      out += render_double(traj.values[n].imag());
    } else if constexpr (scalar_traits<T>::backend == Backend::rational) {
      out += render_double(traj.values[n].to_double());
    } else {
      out += render_double(traj.values[n]);
    }
    out += '\n';
  }
  return out;
}

std::string svg_text(const std::vector<std::vector<double>>& strands, Index order);

/// z_n vs n as a static SVG, one polyline per strand.
template <class T>
std::string svg_text(const Trajectory<T>& traj) {
  std::vector<std::vector<double>> strands(traj.order);
  for (Index n = 0; n < traj.size(); ++n) {
    double v;
    if constexpr (scalar_traits<T>::backend == Backend::rational)
      v = traj.values[n].to_double();
    else if constexpr (scalar_traits<T>::backend == Backend::cplx)
      v = traj.values[n].real();
    else
      v = traj.values[n];
    strands[n % traj.order].push_back(v);
  }
  return svg_text(strands, traj.order);
}

}  // namespace bevholt

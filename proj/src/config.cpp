#include "bevholt/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

namespace bevholt {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  std::size_t e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(trim(s.substr(start)));
      return out;
    }
    out.push_back(trim(s.substr(start, pos - start)));
    start = pos + 1;
  }
}

struct FieldError {
  std::string message;  // message without location; the caller prefixes it
};

CoefficientSpec parse_coefficient(const std::string& value) {
  CoefficientSpec spec;
  std::string body = value;
  if (body.rfind("constant ", 0) == 0) {
    spec.kind = CoefficientSpec::Kind::constant;
    body = trim(body.substr(9));
  } else if (body.rfind("periodic ", 0) == 0) {
    spec.kind = CoefficientSpec::Kind::periodic;
    body = trim(body.substr(9));
  } else if (body.rfind("formula ", 0) == 0) {
    spec.kind = CoefficientSpec::Kind::formula;
    body = trim(body.substr(8));
  } else {
    spec.kind = CoefficientSpec::Kind::constant;  // bare expression
  }
  if (spec.kind == CoefficientSpec::Kind::periodic) {
    for (const auto& part : split(body, ',')) {
      if (part.empty()) throw FieldError{"empty entry in periodic list"};
      spec.exprs.push_back(Formula::parse(part));
    }
    return spec;
  }
  if (spec.kind == CoefficientSpec::Kind::formula) {
    std::size_t at = body.rfind(" period ");
    if (at != std::string::npos) {
      std::string tail = trim(body.substr(at + 8));
      char* end = nullptr;
      unsigned long p = std::strtoul(tail.c_str(), &end, 10);
      if (end == tail.c_str() || *end != '\0' || p == 0)
        throw FieldError{"invalid period '" + tail + "'"};
      spec.declared_period = p;
      body = trim(body.substr(0, at));
    }
  }
  if (body.empty()) throw FieldError{"missing expression"};
  spec.exprs.push_back(Formula::parse(body));
  return spec;
}

Backend parse_backend(const std::string& v) {
  if (v == "rational") return Backend::rational;
  if (v == "float") return Backend::real;
  if (v == "complex") return Backend::cplx;
  throw FieldError{"backend must be rational, float or complex (got '" + v + "')"};
}

OutputKind parse_output(const std::string& v) {
  if (v == "csv") return OutputKind::csv;
  if (v == "plot-data") return OutputKind::plot_data;
  if (v == "svg") return OutputKind::svg;
  throw FieldError{"outputs must list csv, plot-data or svg (got '" + v + "')"};
}

FamilyKind parse_family(const std::string& v) {
  if (v == "zeta1") return FamilyKind::zeta1;
  if (v == "zeta2") return FamilyKind::zeta2;
  if (v == "zeta3") return FamilyKind::zeta3;
  throw FieldError{"family must be zeta1, zeta2 or zeta3 (got '" + v + "')"};
}

Index parse_positive(const std::string& v, const char* what) {
  char* end = nullptr;
  unsigned long long x = std::strtoull(v.c_str(), &end, 10);
  if (end == v.c_str() || *end != '\0') throw FieldError{std::string(what) + " must be a positive integer"};
  if (x == 0) throw FieldError{std::string(what) + " must be >= 1"};
  return static_cast<Index>(x);
}

}  // namespace

std::string CoefficientSpec::str() const {
  std::string out;
  switch (kind) {
    case Kind::constant: out = "constant " + exprs.at(0).str(); break;
    case Kind::periodic: {
      out = "periodic ";
      for (std::size_t i = 0; i < exprs.size(); ++i) {
        if (i) out += ", ";
        out += exprs[i].str();
      }
      break;
    }
    case Kind::formula:
      out = "formula " + exprs.at(0).str();
      if (declared_period) out += " period " + std::to_string(*declared_period);
      break;
  }
  return out;
}

RunConfig RunConfig::parse(std::string_view text, const std::string& source_name) {
  RunConfig cfg;
  bool saw_k = false, saw_a = false, saw_b = false, saw_mu = false, saw_kcap = false;
  bool saw_initial = false;
  std::string section;
  std::istringstream in{std::string(text)};
  std::string raw;
  int lineno = 0;

  auto fail = [&](const std::string& key, const std::string& msg) -> void {
    throw ConfigError(source_name + ":" + std::to_string(lineno) + ": [" + section + "]" +
                      (key.empty() ? "" : "." + key) + ": " + msg);
  };

  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail("", "unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section != "model" && section != "initial" && section != "run" && section != "symmetry")
        fail("", "unknown section [" + section + "]");
      if (section == "symmetry" && !cfg.symmetry) cfg.symmetry.emplace();
      continue;
    }
    std::size_t eq = line.find('=');
    if (eq == std::string::npos) fail("", "expected 'key = value'");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (section.empty()) fail(key, "key outside any section");
    if (value.empty()) fail(key, "missing value");

    try {
      if (section == "model") {
        if (key == "k") {
          cfg.order = parse_positive(value, "k");
          saw_k = true;
        } else if (key == "coefficients") {
          if (value == "direct")
            cfg.ecological = false;
          else if (value == "ecological")
            cfg.ecological = true;
          else
            fail(key, "must be direct or ecological");
        } else if (key == "A") {
          cfg.A = parse_coefficient(value);
          saw_a = true;
        } else if (key == "B") {
          cfg.B = parse_coefficient(value);
          saw_b = true;
        } else if (key == "mu") {
          cfg.mu = parse_coefficient(value);
          saw_mu = true;
        } else if (key == "K") {
          cfg.K = parse_coefficient(value);
          saw_kcap = true;
        } else {
          fail(key, "unknown key");
        }
      } else if (section == "initial") {
        if (key == "values") {
          saw_initial = true;
          if (value == "periodic-seed") {
            cfg.periodic_seed = true;
          } else {
            for (const auto& part : split(value, ',')) {
              if (part.empty()) fail(key, "empty entry in list");
              cfg.initial.push_back(Formula::parse(part));
            }
          }
        } else {
          fail(key, "unknown key");
        }
      } else if (section == "run") {
        if (key == "backend")
          cfg.backend = parse_backend(value);
        else if (key == "horizon")
          cfg.horizon = parse_positive(value, "horizon");
        else if (key == "outputs") {
          cfg.outputs.clear();
          std::string normalized = value;
          std::replace(normalized.begin(), normalized.end(), ' ', ',');
          for (const auto& part : split(normalized, ','))
            if (!part.empty()) cfg.outputs.push_back(parse_output(part));
          if (cfg.outputs.empty()) fail(key, "empty output list");
        } else if (key == "tolerance") {
          char* end = nullptr;
          double tol = std::strtod(value.c_str(), &end);
          if (end == value.c_str() || *end != '\0' || !(tol > 0))
            fail(key, "must be a positive number");
          cfg.tolerance = tol;
        } else {
          fail(key, "unknown key");
        }
      } else if (section == "symmetry") {
        if (key == "family")
          cfg.symmetry->family = parse_family(value);
        else if (key == "seeds") {
          for (const auto& part : split(value, ',')) {
            if (part.empty()) fail(key, "empty entry in list");
            cfg.symmetry->seeds.push_back(Formula::parse(part));
          }
        } else if (key == "p") {
          char* end = nullptr;
          unsigned long p = std::strtoul(value.c_str(), &end, 10);
          if (end == value.c_str() || *end != '\0') fail(key, "must be a non-negative integer");
          cfg.symmetry->p = p;
        } else {
          fail(key, "unknown key");
        }
      }
    } catch (const FieldError& e) {
      fail(key, e.message);
    } catch (const ConfigError& e) {
      fail(key, e.what());
    }
  }

  lineno = 0;
  section = "model";
  if (!saw_k) fail("k", "missing (model order)");
  if (cfg.ecological) {
    if (!saw_mu) fail("mu", "missing (ecological coefficients)");
    if (!saw_kcap) fail("K", "missing (ecological coefficients)");
  } else {
    if (!saw_a) fail("A", "missing (direct coefficients)");
    if (!saw_b) fail("B", "missing (direct coefficients)");
  }
  (void)saw_initial;
  return cfg;
}

RunConfig RunConfig::parse_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path.filename().string());
}

std::string RunConfig::dump() const {
  std::string out;
  out += "[model]\n";
  out += "k = " + std::to_string(order) + "\n";
  out += std::string("coefficients = ") + (ecological ? "ecological" : "direct") + "\n";
  if (ecological) {
    out += "mu = " + mu.str() + "\n";
    out += "K = " + K.str() + "\n";
  } else {
    out += "A = " + A.str() + "\n";
    out += "B = " + B.str() + "\n";
  }
  if (periodic_seed || !initial.empty()) {
    out += "\n[initial]\n";
    if (periodic_seed) {
      out += "values = periodic-seed\n";
    } else {
      out += "values = ";
      for (std::size_t i = 0; i < initial.size(); ++i) {
        if (i) out += ", ";
        out += initial[i].str();
      }
      out += "\n";
    }
  }
  out += "\n[run]\n";
  out += std::string("backend = ") + to_string(backend) + "\n";
  out += "horizon = " + std::to_string(horizon) + "\n";
  out += "outputs = ";
  for (std::size_t i = 0; i < outputs.size(); ++i) {
    if (i) out += ", ";
    out += to_string(outputs[i]);
  }
  out += "\n";
  if (tolerance) out += "tolerance = " + render_double(*tolerance) + "\n";
  if (symmetry) {
    out += "\n[symmetry]\n";
    out += std::string("family = ") + to_string(symmetry->family) + "\n";
    if (!symmetry->seeds.empty()) {
      out += "seeds = ";
      for (std::size_t i = 0; i < symmetry->seeds.size(); ++i) {
        if (i) out += ", ";
        out += symmetry->seeds[i].str();
      }
      out += "\n";
    }
    if (symmetry->family == FamilyKind::zeta3) out += "p = " + std::to_string(symmetry->p) + "\n";
  }
  return out;
}

}  // namespace bevholt

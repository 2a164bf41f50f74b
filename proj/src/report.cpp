#include "subind/report.hpp"

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <system_error>

namespace subind::report {

std::string format_real(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  if (ec != std::errc{}) throw EnumerationError("real value does not format");
  return std::string(buf, end);
}

double parse_real(const std::string& text, const std::string& path) {
  const char* begin = text.c_str();
  char* end = nullptr;
  double value = std::strtod(begin, &end);
  if (end == begin || *end != '\0')
    throw DomainError(path + ": expected a decimal number, got \"" + text + "\"");
  return value;
}

json complex_matrix(const opalg::Mat& m) {
  json out = json::array();
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      out.push_back(format_real(m(i, j).real()));
      out.push_back(format_real(m(i, j).imag()));
    }
  return out;
}

namespace {

double entry_real(const json& v, const std::string& path) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) return parse_real(v.get<std::string>(), path);
  throw DomainError(path + ": expected a decimal string or number");
}

}  // namespace

opalg::Mat parse_complex_matrix(const json& entries, int rows, int cols,
                                const std::string& path) {
  if (!entries.is_array())
    throw DomainError(path + ": expected a flat array of matrix entries");
  const std::size_t want = 2u * static_cast<std::size_t>(rows) * cols;
  if (entries.size() != want)
    throw DomainError(path + ": expected " + std::to_string(want) +
                      " interleaved entries for a " + std::to_string(rows) + "x" +
                      std::to_string(cols) + " matrix, got " +
                      std::to_string(entries.size()));
  opalg::Mat m(rows, cols);
  std::size_t k = 0;
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      const std::string at = path + "[" + std::to_string(k) + "]";
      double re = entry_real(entries[k], at);
      double im = entry_real(entries[k + 1], at);
      m(i, j) = opalg::Cplx(re, im);
      k += 2;
    }
  return m;
}

json search_stats(const SearchStats& stats) {
  json out = json::object();
  out["pairs_examined"] = stats.pairs_examined;
  out["candidates_examined"] = stats.candidates_examined;
  out["budget_exhausted"] = stats.budget_exhausted;
  return out;
}

json morphism_json(const fset::Category& cat, const fset::Morphism& f) {
  json out = json::object();
  out["dom"] = cat.object(f.dom).labels;
  out["cod"] = cat.object(f.cod).labels;
  out["table"] = f.table;
  return out;
}

json morphism_json(const fvec::Category& cat, const fvec::Morphism& f) {
  json out = json::object();
  out["dom_dim"] = cat.dim(f.dom);
  out["cod_dim"] = cat.dim(f.cod);
  out["matrix"] = json::array();
  for (auto v : f.m.a) out["matrix"].push_back(static_cast<int>(v));
  return out;
}

json morphism_json(const pgeo::Category& cat, const pgeo::Morphism& f) {
  json out = json::object();
  out["dom_points"] = cat.geometry(f.dom).n;
  out["cod_points"] = cat.geometry(f.cod).n;
  out["table"] = f.table;
  return out;
}

json morphism_json(const balg::Category& cat, const balg::Morphism& f) {
  json out = json::object();
  out["dom_atoms"] = cat.atoms(f.dom);
  out["cod_atoms"] = cat.atoms(f.cod);
  out["fiber"] = f.fiber;
  return out;
}

json lattice_json(const oml::Lattice& l) {
  json out = json::object();
  out["n"] = l.n;
  out["zero"] = l.zero;
  out["one"] = l.one;
  out["meet"] = l.meet;
  out["join"] = l.join;
  out["ortho"] = l.ortho;
  return out;
}

json envelope(const std::string& kind, const std::string& task) {
  json out = json::object();
  out["tool"] = kTool;
  out["version"] = kVersion;
  out["kind"] = kind;
  out["task"] = task;
  return out;
}

std::string to_json_text(const json& body) { return body.dump(2) + "\n"; }

namespace {

std::string scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void render_line(std::ostream& os, const std::string& name, const json& v) {
  if (v.is_object()) {
    os << name << ":";
    for (const auto& [k, sub] : v.items())
      os << " " << k << "=" << (sub.is_array() ? json(sub.size()) : sub).dump();
    os << "\n";
  } else if (v.is_array()) {
    os << name << ": " << v.size() << " entries\n";
  } else {
    os << name << ": " << scalar_text(v) << "\n";
  }
}

}  // namespace

std::string to_text(const json& body) {
  std::ostringstream os;
  os << body.value("tool", "subind") << " " << body.value("version", "");
  os << " (" << body.value("kind", "?") << "/" << body.value("task", "?") << ")\n";
  for (const auto& [key, value] : body.items()) {
    if (key == "tool" || key == "version" || key == "kind" || key == "task")
      continue;
    if (key == "claims" && value.is_array()) {
      os << "claims: " << value.size() << "\n";
      for (const auto& claim : value)
        os << "  " << claim.value("id", "?") << ": " << claim.value("agreement", "?")
           << " (" << claim.value("instances", json(0)).dump() << " instances)\n";
      continue;
    }
    render_line(os, key, value);
  }
  return os.str();
}

void write_atomic(const std::string& path, const std::string& text) {
  namespace fs = std::filesystem;
  fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw EnumerationError("report path is not writable: " + path);
    out << text;
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw EnumerationError("report rename failed: " + path);
  }
}

}  // namespace subind::report

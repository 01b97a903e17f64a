#pragma once

// CLI wire formats: graph CSV + JSON sidecar, signal CSV, frame/basis CSV.
// Node indices are 1-based on disk.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dgff/frames.hpp"
#include "dgff/graph.hpp"

namespace dgff {
namespace io {

/// Shortest round-trippable decimal form of a double.
inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  // prefer the shortest representation that still round-trips
  for (int prec = 1; prec < 17; ++prec) {
    char cand[32];
    std::snprintf(cand, sizeof(cand), "%.*g", prec, v);
    if (std::strtod(cand, nullptr) == v) return cand;
  }
  return buf;
}

inline std::string meta_path(const std::string& graph_path) {
  return graph_path + ".meta.json";
}

inline void write_graph(const Graph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "src,dst,weight\n";
  for (const Edge& e : g.edges())
    out << e.src + 1 << ',' << e.dst + 1 << ',' << fmt(e.weight) << '\n';
  nlohmann::json meta{{"n", g.n()}, {"directed", g.directed()}};
  std::ofstream mout(meta_path(path));
  if (!mout) throw std::runtime_error("cannot write " + meta_path(path));
  mout << meta.dump(2) << '\n';
}

inline Graph read_graph(const std::string& path) {
  std::ifstream min(meta_path(path));
  if (!min) throw std::runtime_error("missing graph metadata " + meta_path(path));
  nlohmann::json meta = nlohmann::json::parse(min);
  int n = meta.at("n").get<int>();
  bool directed = meta.at("directed").get<bool>();

  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::string line;
  if (!std::getline(in, line) || line.rfind("src,dst,weight", 0) != 0)
    throw std::runtime_error("bad graph header in " + path);
  std::vector<Edge> edges;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string src, dst, w;
    if (!std::getline(ss, src, ',') || !std::getline(ss, dst, ',') ||
        !std::getline(ss, w, ','))
      throw std::runtime_error("bad graph row: " + line);
    edges.push_back({std::stoi(src) - 1, std::stoi(dst) - 1, std::stod(w)});
  }
  return Graph(n, std::move(edges), directed);
}

/// Complex literal in the `re+imj` style (imaginary part omitted when zero).
inline std::string fmt_complex(Complex v) {
  if (v.imag() == 0.0) return fmt(v.real());
  std::string s = fmt(v.real());
  if (v.imag() >= 0.0) s += '+';
  s += fmt(v.imag());
  s += 'j';
  return s;
}

inline Complex parse_complex(const std::string& text) {
  if (text.empty()) throw std::runtime_error("empty complex literal");
  if (text.back() != 'j') return {std::stod(text), 0.0};
  std::string body = text.substr(0, text.size() - 1);
  // split at the sign that separates real and imaginary parts
  for (size_t i = body.size(); i-- > 1;) {
    char c = body[i];
    if ((c == '+' || c == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      double re = std::stod(body.substr(0, i));
      double im = std::stod(body.substr(i));
      return {re, im};
    }
  }
  return {0.0, std::stod(body)};  // pure imaginary
}

inline void write_signal(const CVec& s, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "node,value\n";
  for (int i = 0; i < s.size(); ++i)
    out << i + 1 << ',' << fmt_complex(s(i)) << '\n';
}

inline void write_signal(const Vec& s, const std::string& path) {
  write_signal(CVec(s.cast<Complex>()), path);
}

inline CVec read_signal(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::string line;
  if (!std::getline(in, line) || line.rfind("node,value", 0) != 0)
    throw std::runtime_error("bad signal header in " + path);
  std::vector<std::pair<int, Complex>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto comma = line.find(',');
    if (comma == std::string::npos)
      throw std::runtime_error("bad signal row: " + line);
    rows.emplace_back(std::stoi(line.substr(0, comma)) - 1,
                      parse_complex(line.substr(comma + 1)));
  }
  CVec s = CVec::Zero(rows.size());
  for (auto& [node, value] : rows) {
    if (node < 0 || node >= s.size())
      throw std::runtime_error("signal node index out of range");
    s(node) = value;
  }
  return s;
}

inline const char* family_name(FrameFamily f) {
  switch (f) {
    case FrameFamily::ADGFF: return "ADGFF";
    case FrameFamily::LiDGFF: return "LiDGFF";
    case FrameFamily::lrLiDGFF: return "lrLiDGFF";
    case FrameFamily::SfDGFF: return "SfDGFF";
    case FrameFamily::RGFF: return "RGFF";
  }
  return "?";
}

inline FrameFamily parse_family(const std::string& s) {
  if (s == "ADGFF") return FrameFamily::ADGFF;
  if (s == "LiDGFF") return FrameFamily::LiDGFF;
  if (s == "lrLiDGFF") return FrameFamily::lrLiDGFF;
  if (s == "SfDGFF") return FrameFamily::SfDGFF;
  if (s == "RGFF") return FrameFamily::RGFF;
  throw std::runtime_error("unknown frame family: " + s);
}

inline const char* origin_name(VectorOrigin::Kind k) {
  switch (k) {
    case VectorOrigin::Kind::original: return "original";
    case VectorOrigin::Kind::interpolated: return "interpolated";
    case VectorOrigin::Kind::analytic: return "analytic";
    case VectorOrigin::Kind::optimized: return "optimized";
  }
  return "?";
}

inline VectorOrigin::Kind parse_origin(const std::string& s) {
  if (s == "original") return VectorOrigin::Kind::original;
  if (s == "interpolated") return VectorOrigin::Kind::interpolated;
  if (s == "analytic") return VectorOrigin::Kind::analytic;
  if (s == "optimized") return VectorOrigin::Kind::optimized;
  throw std::runtime_error("unknown origin kind: " + s);
}

/// One row per frame vector: bookkeeping columns then re,im entry pairs.
inline void write_frame(const SpectralFrame& f, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "# family," << family_name(f.family) << "\n# n," << f.n() << "\n# m,"
      << f.size() << '\n';
  out << "index,frequency,origin,parent,alpha,beta";
  for (int i = 0; i < f.n(); ++i) out << ",re_" << i + 1 << ",im_" << i + 1;
  out << '\n';
  for (int j = 0; j < f.size(); ++j) {
    const VectorOrigin& o = f.origins[j];
    out << j + 1 << ',' << fmt(f.frequencies(j)) << ',' << origin_name(o.kind)
        << ',' << o.k << ',' << fmt(o.alpha) << ',' << fmt(o.beta);
    for (int i = 0; i < f.n(); ++i)
      out << ',' << fmt(f.vectors(i, j).real()) << ','
          << fmt(f.vectors(i, j).imag());
    out << '\n';
  }
}

inline SpectralFrame read_frame(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::string line;
  SpectralFrame f;
  int n = -1, m = -1;
  for (int i = 0; i < 3; ++i) {
    if (!std::getline(in, line) || line.rfind("# ", 0) != 0)
      throw std::runtime_error("bad frame preamble in " + path);
    auto comma = line.find(',');
    std::string key = line.substr(2, comma - 2);
    std::string val = line.substr(comma + 1);
    if (key == "family") f.family = parse_family(val);
    else if (key == "n") n = std::stoi(val);
    else if (key == "m") m = std::stoi(val);
  }
  if (n <= 0 || m <= 0) throw std::runtime_error("bad frame dimensions in " + path);
  if (!std::getline(in, line) || line.rfind("index,frequency,origin", 0) != 0)
    throw std::runtime_error("bad frame header in " + path);
  f.vectors.resize(n, m);
  f.frequencies.resize(m);
  f.origins.resize(m);
  int row = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (row >= m) throw std::runtime_error("too many frame rows in " + path);
    std::istringstream ss(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (static_cast<int>(cells.size()) != 6 + 2 * n)
      throw std::runtime_error("bad frame row width in " + path);
    f.frequencies(row) = std::stod(cells[1]);
    f.origins[row] = {parse_origin(cells[2]), std::stoi(cells[3]),
                      std::stod(cells[4]), std::stod(cells[5])};
    for (int i = 0; i < n; ++i)
      f.vectors(i, row) = {std::stod(cells[6 + 2 * i]),
                           std::stod(cells[7 + 2 * i])};
    ++row;
  }
  if (row != m) throw std::runtime_error("missing frame rows in " + path);
  return f;
}

}  // namespace io
}  // namespace dgff

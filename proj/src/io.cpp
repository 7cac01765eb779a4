#include "grt/io.hpp"

#include <cstdio>
#include <cstring>
#include <map>
#include <fstream>
#include <sstream>

namespace grt {

namespace {

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_doubles(std::ostream& os, const double* p, std::size_t count) {
  static_assert(sizeof(double) == 8);
  os.write(reinterpret_cast<const char*>(p), static_cast<std::streamsize>(count * 8));
}

void read_doubles(std::istream& is, double* p, std::size_t count) {
  is.read(reinterpret_cast<char*>(p), static_cast<std::streamsize>(count * 8));
  if (!is) throw IoError("truncated payload");
}

std::map<std::string, std::string> parse_kv(std::istringstream& ls) {
  std::map<std::string, std::string> kv;
  std::string tok;
  while (ls >> tok) {
    auto eq = tok.find('=');
    if (eq == std::string::npos) throw IoError("malformed header token: " + tok);
    kv[tok.substr(0, eq)] = tok.substr(eq + 1);
  }
  return kv;
}

std::string require(const std::map<std::string, std::string>& kv, const std::string& key) {
  auto it = kv.find(key);
  if (it == kv.end()) throw IoError("missing header field: " + key);
  return it->second;
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::istringstream is(s);
  std::string item;
  while (std::getline(is, item, ',')) out.push_back(std::stoi(item));
  return out;
}

} // namespace

void save_tfld(const std::string& path, const TensorField& f) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open for writing: " + path);
  os << "TFLD1 n=" << f.grid.n << " m=" << f.m << " N=" << f.grid.N
     << " L=" << fmt_double(f.grid.L) << " order=lex-nondecreasing\n";
  write_doubles(os, f.data.data(), f.data.size());
  if (!os) throw IoError("write failure: " + path);
}

TensorField load_tfld(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open: " + path);
  std::string line;
  if (!std::getline(is, line)) throw IoError("missing header: " + path);
  std::istringstream ls(line);
  std::string magic;
  ls >> magic;
  if (magic != "TFLD1") throw IoError("bad magic in " + path);
  auto kv = parse_kv(ls);
  Grid g;
  g.n = std::stoi(require(kv, "n"));
  g.N = std::stoi(require(kv, "N"));
  g.L = std::stod(require(kv, "L"));
  if (require(kv, "order") != "lex-nondecreasing") throw IoError("unknown ordering in " + path);
  g.validate();
  TensorField f(g, std::stoi(require(kv, "m")));
  read_doubles(is, f.data.data(), f.data.size());
  return f;
}

void save_sino(const std::string& path, const Sinogram& g) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open for writing: " + path);
  const DirectionGrid& dg = g.dgrid;
  os << "SINO1 n=" << dg.n << " m=" << g.sig.order();
  if (g.sig.uses_u_axis())
    os << " mode=pair l1=" << g.sig.l1 << " l2=" << g.sig.l2;
  else {
    os << " mode=frame degrees=";
    for (std::size_t i = 0; i < g.sig.degrees.size(); ++i)
      os << (i ? "," : "") << g.sig.degrees[i];
  }
  os << " dirs=" << dg.dirs() << " u_count=" << dg.u_count << " p_count=" << dg.p.size()
     << " p_spacing=" << fmt_double(dg.hp) << " p_offset=" << fmt_double(dg.p.front()) << "\n";
  for (std::size_t j = 0; j < dg.dirs(); ++j) {
    os << "omega";
    for (int d = 0; d < dg.n; ++d) os << " " << fmt_double(dg.omegas[j][d]);
    os << "\n";
  }
  // tangent directions are derived from the deterministic frame; listed for
  // external consumers
  for (std::size_t j = 0; j < dg.dirs(); ++j) {
    os << "u";
    for (int ui = 0; ui < g.u_extent(); ++ui) {
      Vec u = g.sig.uses_u_axis() ? dg.u_vector(j, ui) : Vec(Vec::Zero(dg.n));
      for (int d = 0; d < dg.n; ++d) os << " " << fmt_double(u[d]);
    }
    os << "\n";
  }
  os << "DATA\n";
  write_doubles(os, g.values.data(), g.values.size());
  if (!os) throw IoError("write failure: " + path);
}

Sinogram load_sino(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open: " + path);
  std::string line;
  if (!std::getline(is, line)) throw IoError("missing header: " + path);
  std::istringstream ls(line);
  std::string magic;
  ls >> magic;
  if (magic != "SINO1") throw IoError("bad magic in " + path);
  auto kv = parse_kv(ls);

  DirectionGrid dg;
  dg.n = std::stoi(require(kv, "n"));
  dg.u_count = std::stoi(require(kv, "u_count"));
  dg.hp = std::stod(require(kv, "p_spacing"));
  const auto dirs = static_cast<std::size_t>(std::stoul(require(kv, "dirs")));
  const auto pc = static_cast<std::size_t>(std::stoul(require(kv, "p_count")));
  const double p0 = std::stod(require(kv, "p_offset"));
  for (std::size_t k = 0; k < pc; ++k) dg.p.push_back(p0 + static_cast<double>(k) * dg.hp);

  Signature sig;
  std::string mode = require(kv, "mode");
  if (mode == "pair")
    sig = Signature::pair_degrees(std::stoi(require(kv, "l1")), std::stoi(require(kv, "l2")));
  else if (mode == "frame")
    sig = Signature::frame_degrees(parse_int_list(require(kv, "degrees")));
  else
    throw IoError("unknown mode in " + path);
  if (sig.order() != std::stoi(require(kv, "m"))) throw IoError("inconsistent order in " + path);

  for (std::size_t j = 0; j < dirs; ++j) {
    if (!std::getline(is, line)) throw IoError("truncated direction list: " + path);
    std::istringstream ds(line);
    std::string tag;
    ds >> tag;
    if (tag != "omega") throw IoError("expected omega line in " + path);
    Vec w(dg.n);
    for (int d = 0; d < dg.n; ++d)
      if (!(ds >> w[d])) throw IoError("malformed omega line in " + path);
    dg.omegas.push_back(w);
  }
  for (std::size_t j = 0; j < dirs; ++j) {
    if (!std::getline(is, line) || line.rfind("u", 0) != 0)
      throw IoError("truncated u list: " + path);
  }
  if (!std::getline(is, line) || line != "DATA") throw IoError("missing DATA marker: " + path);

  for (std::size_t j = 0; j < dirs; ++j) {
    dg.frames.push_back(frame(dg.omegas[j]));
    int anti = -1;
    for (std::size_t k = 0; k < dirs; ++k)
      if ((dg.omegas[j] + dg.omegas[k]).norm() < 1e-12) anti = static_cast<int>(k);
    if (anti < 0) throw IoError("direction grid not antipodally closed: " + path);
    dg.antipode.push_back(anti);
  }
  dg.validate();

  Sinogram g(sig, dg);
  read_doubles(is, g.values.data(), g.values.size());
  return g;
}

} // namespace grt

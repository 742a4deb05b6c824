#include "conjo/exports.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>
#include <thread>

#include "conjo/errors.hpp"

namespace conjo {

namespace {

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string digraph_dot(const Digraph& d, const std::vector<std::string>& labels, const std::string& name) {
  std::ostringstream os;
  os << "digraph \"" << dot_escape(name) << "\" {\n";
  for (std::size_t v = 0; v < d.n; ++v) {
    os << "  v" << v << " [label=\"" << dot_escape(v < labels.size() ? labels[v] : std::to_string(v)) << "\"];\n";
  }
  for (std::size_t v = 0; v < d.n; ++v)
    for (std::size_t w : d.out[v]) os << "  v" << v << " -> v" << w << ";\n";
  os << "}\n";
  return os.str();
}

std::string spectrum_csv(const Spectrum& s) {
  std::ostringstream os;
  os << "re,im,multiplicity,is_max_modulus\n";
  std::vector<bool> mm(s.eigenvalues.size(), false);
  for (std::size_t k : s.max_modulus_indices) mm[k] = true;
  char buf[128];
  for (std::size_t k = 0; k < s.eigenvalues.size(); ++k) {
    const auto& e = s.eigenvalues[k];
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%d,%d\n", e.value.real(), e.value.imag(), e.multiplicity, mm[k] ? 1 : 0);
    os << buf;
  }
  return os.str();
}

std::string sparse_matrix_text(const COperatorMatrix& m) {
  std::ostringstream os;
  for (const auto& e : m.annotated) {
    os << e.row << ' ' << e.col << ' ' << e.coefficient;
    for (int d : e.degree.coords) os << ' ' << d;
    os << '\n';
  }
  return os.str();
}

std::string dense_matrix_csv(const IntMatrix& m) {
  std::ostringstream os;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) os << (c ? "," : "") << m(r, c);
    os << '\n';
  }
  return os.str();
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
  namespace fs = std::filesystem;
  std::error_code ec;
  const fs::path dir = path.parent_path();
  if (!dir.empty()) {
    fs::create_directories(dir, ec);
    if (ec) throw OutputError("cannot create directory " + dir.string() + ": " + ec.message());
  }
  std::ostringstream tag;
  tag << ".tmp." << std::this_thread::get_id();
  fs::path tmp = path;
  tmp += tag.str();
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw OutputError("cannot write " + tmp.string());
    f << contents;
    f.flush();
    if (!f) {
      fs::remove(tmp, ec);
      throw OutputError("write failed for " + tmp.string());
    }
  }
  fs::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignore;
    fs::remove(tmp, ignore);
    throw OutputError("cannot rename onto " + path.string() + ": " + ec.message());
  }
}

}  // namespace conjo

#include "nlt/io.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "nlt/config.hpp"

namespace nlt {

namespace {

std::runtime_error io_error(const std::string& path, const std::string& what) {
  return std::runtime_error(path + ": " + what);
}

template <class T>
T to_little(T v) {
  if constexpr (std::endian::native == std::endian::little) {
    return v;
  } else {
    unsigned char b[sizeof(T)];
    std::memcpy(b, &v, sizeof(T));
    std::reverse(b, b + sizeof(T));
    std::memcpy(&v, b, sizeof(T));
    return v;
  }
}

template <class T>
void put(std::ostream& out, T v) {
  v = to_little(v);
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
bool get(std::istream& in, T& v) {
  if (!in.read(reinterpret_cast<char*>(&v), sizeof(T))) return false;
  v = to_little(v);
  return true;
}

void write_file(const std::string& path, const std::string& content, bool binary) {
  std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
  if (!out) throw io_error(path, "cannot open for writing");
  out << content;
  out.close();
  if (!out) throw io_error(path, "write failed");
}

}  // namespace

std::string series_text(std::span<const DiagnosticsRecord> records) {
  std::string s = kSeriesHeader;
  s += '\n';
  for (const DiagnosticsRecord& r : records) {
    const double v[] = {r.t, r.mass, r.mass_positive, r.maximum, r.minimum, r.hdot_alpha_sq,
                        r.grad_inf, r.criterion_integrand, r.tail_fraction};
    for (std::size_t i = 0; i < std::size(v); ++i) {
      if (i) s += ',';
      s += format_double(v[i]);
    }
    s += '\n';
  }
  return s;
}

void write_series(const std::string& path, std::span<const DiagnosticsRecord> records) {
  write_file(path, series_text(records), false);
}

std::vector<DiagnosticsRecord> parse_series(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kSeriesHeader) throw std::invalid_argument("series: header mismatch");
  std::vector<DiagnosticsRecord> out;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    if (std::count(line.begin(), line.end(), ',') != 8)
      throw std::invalid_argument("series row " + std::to_string(row) + ": expected 9 columns");
    double v[9];
    std::size_t start = 0;
    for (double& cell : v) {
      const std::size_t end = line.find(',', start);
      cell = parse_double(line.substr(start, end - start), "series row " + std::to_string(row));
      start = end + 1;
    }
    out.push_back({v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7], v[8]});
  }
  return out;
}

std::vector<DiagnosticsRecord> read_series(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error(path, "cannot open for reading");
  std::ostringstream s;
  s << in.rdbuf();
  try {
    return parse_series(s.str());
  } catch (const std::invalid_argument& e) {
    throw io_error(path, e.what());
  }
}

void write_snapshot(const std::string& path, const PhysicalField& field, double t) {
  const Grid& g = field.grid();
  std::ostringstream out(std::ios::binary);
  out.write("NLTS", 4);
  put<std::uint32_t>(out, kSnapshotVersion);
  put<std::uint32_t>(out, std::uint32_t(g.dimension()));
  put<std::uint32_t>(out, std::uint32_t(g.resolution()));
  put<double>(out, g.length());
  put<double>(out, t);
  for (std::size_t i = 0; i < field.size(); ++i) put<double>(out, field[i]);
  write_file(path, out.str(), true);
}

Snapshot read_snapshot(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error(path, "cannot open for reading");
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, "NLTS", 4) != 0) throw io_error(path, "bad magic");
  std::uint32_t version = 0, n = 0, N = 0;
  double L = 0.0, t = 0.0;
  if (!get(in, version)) throw io_error(path, "truncated header");
  if (version != kSnapshotVersion) throw io_error(path, "unsupported version " + std::to_string(version));
  if (!get(in, n) || !get(in, N) || !get(in, L) || !get(in, t)) throw io_error(path, "truncated header");
  if (n < 1 || n > 3 || N < 4 || N % 2 != 0 || N > (1u << 16)) throw io_error(path, "invalid grid in header");
  const Grid grid(int(n), int(N), L);
  PhysicalField f(grid);
  for (std::size_t i = 0; i < f.size(); ++i)
    if (!get(in, f[i]))
      throw io_error(path, "sample count mismatch: expected " + std::to_string(f.size()) + ", got " + std::to_string(i));
  if (in.peek() != std::char_traits<char>::eof())
    throw io_error(path, "sample count mismatch: trailing data after " + std::to_string(f.size()) + " samples");
  return {t, std::move(f)};
}

std::string snapshot_filename(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "snap_%06zu.nlts", index);
  return buf;
}

std::vector<Snapshot> read_snapshot_dir(const std::string& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw io_error(dir, "not a directory");
  std::vector<std::string> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".nlts") files.push_back(entry.path().string());
  std::sort(files.begin(), files.end());
  std::vector<Snapshot> out;
  for (const std::string& f : files) out.push_back(read_snapshot(f));
  std::stable_sort(out.begin(), out.end(), [](const Snapshot& a, const Snapshot& b) { return a.t < b.t; });
  return out;
}

void write_tracers(const std::string& path, std::span<const TracerSample> samples, int dimension) {
  std::string s = "t";
  const std::size_t count = samples.empty() ? 0 : samples.front().positions.size();
  for (std::size_t k = 0; k < count; ++k) {
    for (int j = 0; j < dimension; ++j) s += ",x" + std::to_string(j) + "_" + std::to_string(k);
    s += ",theta_" + std::to_string(k);
  }
  s += '\n';
  for (const TracerSample& sample : samples) {
    s += format_double(sample.t);
    for (std::size_t k = 0; k < count; ++k) {
      for (int j = 0; j < dimension; ++j) s += ',' + format_double(sample.positions[k][j]);
      s += ',' + format_double(sample.values[k]);
    }
    s += '\n';
  }
  write_file(path, s, false);
}

}  // namespace nlt

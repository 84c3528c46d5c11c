#include "nhwm/io.hpp"

#include <bit>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "nhwm/config.hpp"
#include "nhwm/errors.hpp"

static_assert(std::endian::native == std::endian::little,
              "snapshot format assumes a little-endian host");

namespace nhwm {

int SeriesTable::column_index(const std::string& name) const {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return static_cast<int>(i);
  return -1;
}

const std::vector<double>& SeriesTable::column(const std::string& name) const {
  const int i = column_index(name);
  if (i < 0) throw std::invalid_argument("series: no column `" + name + "`");
  return columns[static_cast<std::size_t>(i)];
}

std::vector<double>& SeriesTable::add_column(const std::string& name) {
  names.push_back(name);
  columns.emplace_back();
  return columns.back();
}

void write_csv(const std::string& path, const SeriesTable& table) {
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  for (std::size_t i = 0; i < table.names.size(); ++i)
    std::fprintf(f, "%s%s", i ? "," : "", table.names[i].c_str());
  std::fputc('\n', f);
  for (std::size_t r = 0; r < table.rows(); ++r) {
    for (std::size_t c = 0; c < table.columns.size(); ++c)
      std::fprintf(f, "%s%.17g", c ? "," : "", table.columns[c][r]);
    std::fputc('\n', f);
  }
  std::fclose(f);
}

SeriesTable read_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);
  SeriesTable table;
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty csv: " + path);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::istringstream hs(line);
  std::string name;
  while (std::getline(hs, name, ',')) table.add_column(name);
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string cell;
    std::size_t c = 0;
    while (std::getline(ls, cell, ',')) {
      if (c >= table.columns.size())
        throw std::runtime_error("csv row wider than header: " + path);
      table.columns[c++].push_back(std::stod(cell));
    }
    if (c != table.columns.size())
      throw std::runtime_error("csv row narrower than header: " + path);
  }
  return table;
}

void write_snapshot(const std::string& path, const WaveField& field,
                    double t) {
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  const Grid& g = field.grid;
  if (g.ndim() == 1)
    std::fprintf(f, "NHWM1 1 %d %.17g %.17g\n", g.n(0), g.length(0), t);
  else
    std::fprintf(f, "NHWM1 2 %d %d %.17g %.17g %.17g\n", g.n(0), g.n(1),
                 g.length(0), g.length(1), t);
  std::fwrite(field.psi.data(), sizeof(Complex), field.psi.size(), f);
  std::fclose(f);
}

Snapshot read_snapshot(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::string header;
  std::getline(in, header);
  std::istringstream hs(header);
  std::string magic;
  int ndim = 0;
  hs >> magic >> ndim;
  if (magic != "NHWM1" || (ndim != 1 && ndim != 2))
    throw std::runtime_error("bad snapshot header: " + path);
  double t = 0.0;
  Grid grid = Grid::make_1d(2, 1.0);
  if (ndim == 1) {
    int n;
    double l;
    hs >> n >> l >> t;
    grid = Grid::make_1d(n, l);
  } else {
    int n1, n2;
    double l1, l2;
    hs >> n1 >> n2 >> l1 >> l2 >> t;
    grid = Grid::make_2d(n1, n2, l1, l2);
  }
  if (!hs) throw std::runtime_error("bad snapshot header: " + path);
  Snapshot snap{WaveField(grid), t};
  in.read(reinterpret_cast<char*>(snap.field.psi.data()),
          static_cast<std::streamsize>(snap.field.psi.size() *
                                       sizeof(Complex)));
  if (!in) throw std::runtime_error("truncated snapshot payload: " + path);
  return snap;
}

std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string fnv1a64_hex(const std::string& data) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a64(data)));
  return buf;
}

void write_manifest(const std::string& path, const RunManifest& m) {
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  std::fprintf(f, "[manifest]\n");
  std::fprintf(f, "version = %s\n", m.version.c_str());
  std::fprintf(f, "command = %s\n", m.command.c_str());
  std::fprintf(f, "input_hash = %s\n", m.input_hash.c_str());
  std::fprintf(f, "output_dir = %s\n", m.output_dir.c_str());
  std::string outs;
  for (std::size_t i = 0; i < m.outputs.size(); ++i)
    outs += (i ? ";" : "") + m.outputs[i];
  std::fprintf(f, "outputs = %s\n", outs.c_str());
  std::fprintf(f, "\n%s", m.resolved_config.c_str());
  std::fclose(f);
}

void finalize_manifest(const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "ab");
  if (!f) throw std::runtime_error("cannot open for append: " + path);
  std::fprintf(f, "\n# DONE\n");
  std::fclose(f);
}

const char* version_string() { return "nhwm 0.1.0"; }

}  // namespace nhwm

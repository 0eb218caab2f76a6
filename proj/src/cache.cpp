#include "spinlab/cache.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <iostream>

namespace spinlab {

namespace {

constexpr const char* kVersion = "spinlab-1";

std::uint64_t fnv1a(const std::string& data, std::uint64_t h = 0xcbf29ce484222325ULL) {
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, v);
  return buf;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string cache_key(const std::string& canonical_params) {
  return hex64(fnv1a(canonical_params, fnv1a(kVersion)));
}

std::optional<json> cache_lookup(const CacheConfig& cfg, const std::string& key) {
  if (!cfg.enabled) return std::nullopt;
  const auto path = cfg.dir / (key + ".json");
  std::ifstream in(path);
  if (!in) return std::nullopt;
  try {
    json doc = json::parse(in);
    if (!doc.is_object() || !doc.contains("key") || doc["key"] != key)
      throw std::runtime_error("key mismatch");
    return doc;
  } catch (const std::exception& e) {
    std::cerr << "warning: ignoring corrupt cache entry " << path.string() << " (" << e.what()
              << ")\n";
    return std::nullopt;
  }
}

void cache_store(const CacheConfig& cfg, const std::string& key, const json& doc) {
  if (!cfg.enabled) return;
  std::error_code ec;
  std::filesystem::create_directories(cfg.dir, ec);
  if (ec) {
    std::cerr << "warning: cannot create cache dir " << cfg.dir.string() << "\n";
    return;
  }
  json entry = doc;
  entry["key"] = key;
  const auto path = cfg.dir / (key + ".json");
  const auto tmp = cfg.dir / (key + ".tmp");
  {
    std::ofstream out(tmp);
    out << entry.dump(2) << "\n";
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) std::cerr << "warning: cache store failed for " << path.string() << "\n";
}

std::string pauli_sum_hash(const PauliSum& h) {
  std::string blob = std::to_string(h.n_sites());
  const PauliSum canon = h.canonical();
  for (const auto& t : canon.terms()) blob += "|" + t.str();
  return hex64(fnv1a(blob));
}

json matrix_to_json(const OperatorMatrix& m, const std::string& term_hash) {
  json doc;
  doc["n_sites"] = m.basis().n_sites();
  doc["sector"] =
      m.basis().sector().is_all() ? json("all") : json(m.basis().sector().magnons);
  doc["term_hash"] = term_hash;
  json rows = json::array(), cols = json::array(), re = json::array(), im = json::array();
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t p = m.row_ptr()[i]; p < m.row_ptr()[i + 1]; ++p) {
      rows.push_back(i);
      cols.push_back(m.cols()[p]);
      re.push_back(m.values()[p].real());
      im.push_back(m.values()[p].imag());
    }
  doc["rows"] = std::move(rows);
  doc["cols"] = std::move(cols);
  doc["re"] = std::move(re);
  doc["im"] = std::move(im);
  return doc;
}

OperatorMatrix matrix_from_json(const json& doc) {
  const auto n_sites = doc.at("n_sites").get<std::size_t>();
  Sector sector;
  if (!doc.at("sector").is_string()) sector.magnons = doc.at("sector").get<int>();
  SectorBasis basis(n_sites, sector);
  const auto& rows = doc.at("rows");
  const auto& cols = doc.at("cols");
  const auto& re = doc.at("re");
  const auto& im = doc.at("im");
  if (rows.size() != cols.size() || rows.size() != re.size() || rows.size() != im.size())
    throw Error("parse_error", "inconsistent triplet arrays");
  std::vector<std::size_t> row_ptr(basis.size() + 1, 0);
  std::vector<std::size_t> c(rows.size());
  std::vector<complex> v(rows.size());
  std::size_t prev = 0;
  for (std::size_t p = 0; p < rows.size(); ++p) {
    const auto r = rows[p].get<std::size_t>();
    if (r < prev || r >= basis.size())
      throw Error("parse_error", "triplets must be sorted by row and in range");
    while (prev < r) row_ptr[++prev] = p;
    c[p] = cols[p].get<std::size_t>();
    if (c[p] >= basis.size()) throw Error("parse_error", "column index out of range");
    v[p] = complex(re[p].get<double>(), im[p].get<double>());
  }
  while (prev < basis.size()) row_ptr[++prev] = rows.size();
  return OperatorMatrix(std::move(basis), std::move(row_ptr), std::move(c), std::move(v));
}

}  // namespace spinlab

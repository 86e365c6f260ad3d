#include "permzhu/cache.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace permzhu {

namespace {

using nlohmann::json;

json scalar_to_json(const CycloScalar& c) {
  json coeffs = json::array();
  for (const Rational& q : c.coeffs()) coeffs.push_back(rational_to_string(q));
  return json{{"order", c.order()}, {"coeffs", coeffs}};
}

CycloScalar scalar_from_json(const json& j) {
  unsigned order = j.at("order").get<unsigned>();
  std::vector<Rational> coeffs;
  for (const auto& s : j.at("coeffs")) coeffs.push_back(rational_from_string(s.get<std::string>()));
  return CycloScalar(order, std::move(coeffs));
}

std::uint64_t fnv1a(const std::string& data) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : data) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string rows_payload(const std::vector<SparseVec>& rows) {
  std::ostringstream os;
  for (const SparseVec& row : rows) {
    for (const auto& [col, c] : row) os << col << ":" << c.to_string() << ";";
    os << "\n";
  }
  return os.str();
}

}  // namespace

OspanCache::OspanCache(std::string dir, std::string algebra_name, int threads)
    : dir_(std::move(dir)), algebra_(std::move(algebra_name)), threads_(threads) {}

std::string OspanCache::cache_key(const std::string& algebra, const TwistSpec& spec, Weight wgen,
                                  Weight wstore) {
  std::ostringstream os;
  os << algebra << "|" << spec.describe() << "|gen" << wgen.twice() << "|store" << wstore.twice();
  return os.str();
}

OspanBuilder OspanCache::builder() {
  return [this](const Twist& twist, Weight wgen, Weight wstore) -> OSpan {
    if (dir_.empty()) return build_ospan(twist, wgen, wstore, threads_);

    namespace fs = std::filesystem;
    const std::string key = cache_key(algebra_, twist.spec(), wgen, wstore);
    const std::string fname = "ospan-" + std::to_string(fnv1a(key)) + ".json";
    const fs::path path = fs::path(dir_) / fname;

    OSpan span(twist.algebra(), wgen, wstore);
    std::error_code ec;
    if (fs::exists(path, ec)) {
      try {
        std::ifstream in(path);
        json j = json::parse(in);
        if (j.at("key").get<std::string>() != key) throw std::runtime_error("key mismatch");
        if (j.at("columns").get<size_t>() != span.columns().size())
          throw std::runtime_error("column count mismatch");
        std::vector<SparseVec> rows;
        std::vector<int> pivots;
        for (const auto& jr : j.at("rows")) {
          SparseVec row;
          for (const auto& je : jr)
            row.emplace_back(je.at(0).get<int>(), scalar_from_json(je.at(1)));
          if (row.empty()) throw std::runtime_error("empty cached row");
          pivots.push_back(row.back().first);
          rows.push_back(std::move(row));
        }
        const std::string checksum = j.at("checksum").get<std::string>();
        if (checksum != std::to_string(fnv1a(rows_payload(rows))))
          throw std::runtime_error("checksum mismatch");
        span.load_rows(std::move(rows), std::move(pivots));
        ++stats_.hits;
        return span;
      } catch (const std::exception& e) {
        stats_.warnings.push_back("cache entry " + fname + " rejected (" + e.what() +
                                  "); recomputing");
      }
    }

    ++stats_.misses;
    span = build_ospan(twist, wgen, wstore, threads_);

    json j;
    j["key"] = key;
    j["columns"] = span.columns().size();
    json jrows = json::array();
    for (const SparseVec& row : span.rows()) {
      json jr = json::array();
      for (const auto& [col, c] : row) jr.push_back(json::array({col, scalar_to_json(c)}));
      jrows.push_back(std::move(jr));
    }
    j["rows"] = std::move(jrows);
    j["checksum"] = std::to_string(fnv1a(rows_payload(span.rows())));

    std::error_code mk;
    fs::create_directories(dir_, mk);
    const fs::path tmp = path.string() + ".tmp";
    {
      std::ofstream out(tmp);
      if (!out) {
        stats_.warnings.push_back("cache directory " + dir_ + " not writable; proceeding uncached");
        return span;
      }
      out << j.dump();
    }
    fs::rename(tmp, path, ec);
    if (ec) {
      stats_.warnings.push_back("cache rename failed for " + fname + "; proceeding uncached");
      fs::remove(tmp, ec);
    }
    return span;
  };
}

}  // namespace permzhu

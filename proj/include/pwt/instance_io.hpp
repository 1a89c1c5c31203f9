#pragma once

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "pwt/instance.hpp"

namespace pwt {

inline constexpr int kInstanceFormatVersion = 1;

/// JSON document of an instance. Cities are 1-based in the file; nu is never stored.
[[nodiscard]] inline nlohmann::json instance_to_json(const Instance& inst) {
  nlohmann::json items = nlohmann::json::array();
  for (std::size_t i = 0; i < inst.size(); ++i) {
    items.push_back({{"profit", inst.items()[i].profit},
                     {"weight", inst.items()[i].weight},
                     {"city", inst.city_of()[i] + 1}});
  }
  return {{"version", kInstanceFormatVersion},
          {"n", inst.size()},
          {"m", inst.legs()},
          {"distances", inst.distances()},
          {"rentingRate", inst.renting_rate()},
          {"vMin", inst.v_min()},
          {"vMax", inst.v_max()},
          {"capacity", inst.capacity()},
          {"items", std::move(items)}};
}

[[nodiscard]] inline Instance instance_from_json(const nlohmann::json& doc) {
  try {
    if (doc.at("version").get<int>() != kInstanceFormatVersion) {
      throw std::invalid_argument("unsupported instance format version");
    }
    const auto n = doc.at("n").get<std::size_t>();
    const auto m = doc.at("m").get<std::size_t>();
    auto distances = doc.at("distances").get<std::vector<double>>();
    if (distances.size() != m) throw std::invalid_argument("distances length differs from m");
    const auto& items_doc = doc.at("items");
    if (!items_doc.is_array() || items_doc.size() != n) throw std::invalid_argument("items length differs from n");
    std::vector<Item> items;
    std::vector<std::size_t> cities;
    items.reserve(n);
    cities.reserve(n);
    for (const auto& it : items_doc) {
      items.push_back({it.at("profit").get<std::int64_t>(), it.at("weight").get<std::int64_t>()});
      const auto city = it.at("city").get<std::int64_t>();
      if (city < 1) throw std::invalid_argument("item city must be at least 1");
      cities.push_back(static_cast<std::size_t>(city - 1));
    }
    return Instance(std::move(items), std::move(cities), std::move(distances), doc.at("rentingRate").get<double>(),
                    doc.at("vMin").get<double>(), doc.at("vMax").get<double>(),
                    doc.at("capacity").get<std::int64_t>());
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed instance document: ") + e.what());
  }
}

inline void save_instance(const Instance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << instance_to_json(inst).dump(2) << '\n';
}

[[nodiscard]] inline Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
  return instance_from_json(doc);
}

}  // namespace pwt

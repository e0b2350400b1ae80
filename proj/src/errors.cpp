#include "guarded/errors.hpp"

#include <sstream>

namespace guarded {

Limits Limits::parse(const std::string& spec, Limits base) {
  std::istringstream in(spec);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos) {
      throw ShapeError("limit entry without '=': " + item);
    }
    std::string key = item.substr(0, eq);
    std::uint64_t value = 0;
    try {
      std::size_t used = 0;
      value = std::stoull(item.substr(eq + 1), &used);
      if (used != item.size() - eq - 1) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ShapeError("bad limit value: " + item);
    }
    if (key == "carrier") {
      base.max_carrier = value;
    } else if (key == "pfin") {
      base.max_set_card = value;
    } else if (key == "search") {
      base.max_search = value;
    } else if (key == "values") {
      base.max_values = value;
    } else if (key == "states") {
      base.max_states = value;
    } else {
      throw ShapeError("unknown limit key: " + key);
    }
  }
  return base;
}

}  // namespace guarded

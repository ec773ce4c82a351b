#include "mvcs/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace mvcs {

namespace {

void indent(std::ostream& out, int depth) {
  for (int i = 0; i < depth; ++i) out << "  ";
}

void emit(std::ostream& out, const nlohmann::json& value, int depth) {
  using value_t = nlohmann::json::value_t;
  switch (value.type()) {
    case value_t::object: {
      // nlohmann::json stores objects in a std::map, so iteration is sorted.
      if (value.empty()) {
        out << "{}";
        return;
      }
      out << "{\n";
      bool first = true;
      for (auto it = value.begin(); it != value.end(); ++it) {
        if (!first) out << ",\n";
        first = false;
        indent(out, depth + 1);
        out << nlohmann::json(it.key()).dump() << ": ";
        emit(out, it.value(), depth + 1);
      }
      out << '\n';
      indent(out, depth);
      out << '}';
      return;
    }
    case value_t::array: {
      if (value.empty()) {
        out << "[]";
        return;
      }
      out << "[\n";
      for (std::size_t i = 0; i < value.size(); ++i) {
        if (i > 0) out << ",\n";
        indent(out, depth + 1);
        emit(out, value[i], depth + 1);
      }
      out << '\n';
      indent(out, depth);
      out << ']';
      return;
    }
    case value_t::number_float: {
      const double x = value.get<double>();
      if (!std::isfinite(x)) {
        out << "null";
        return;
      }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", x);
      out << buf;
      return;
    }
    default:
      out << value.dump();
      return;
  }
}

}  // namespace

void write_json(std::ostream& out, const nlohmann::json& value) {
  emit(out, value, 0);
  out << '\n';
}

std::string dump_json(const nlohmann::json& value) {
  std::ostringstream out;
  write_json(out, value);
  return out.str();
}

}  // namespace mvcs

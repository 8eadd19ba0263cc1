#include "hoeffding/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "hoeffding/errors.hpp"

namespace hoeffding {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(errc::bad_input, "cannot open input file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(errc::bad_input, "cannot open output file '" + path + "'");
  out << content;
  if (!out) fail(errc::bad_input, "failed writing output file '" + path + "'");
}

namespace {

const nlohmann::json& require(const nlohmann::json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end())
    fail(errc::bad_input, std::string("missing required field '") + key + "'");
  return *it;
}

Vector parse_double_array(const nlohmann::json& j, const char* what) {
  if (!j.is_array())
    fail(errc::bad_input, std::string(what) + " must be an array of numbers");
  Vector out(j.size());
  Index i = 0;
  for (const auto& v : j) {
    if (!v.is_number())
      fail(errc::bad_input, std::string(what) + " must contain only numbers");
    out[i++] = v.get<double>();
  }
  return out;
}

ProblemInput parse_input_checked(const nlohmann::json& j) {
  if (!j.is_object()) fail(errc::bad_input, "input must be a JSON object");

  ProblemInput in;
  const auto& inputs = require(j, "inputs");
  if (!inputs.is_array() || inputs.empty())
    fail(errc::bad_input, "'inputs' must be a non-empty array");
  for (const auto& spec : inputs) {
    InputSpec parsed;
    parsed.name = require(spec, "name").get<std::string>();
    const auto& levels = require(spec, "levels");
    if (!levels.is_array())
      fail(errc::bad_input, "input levels must be an array of strings");
    for (const auto& level : levels)
      parsed.levels.push_back(level.get<std::string>());
    in.pmf.inputs.push_back(std::move(parsed));
  }
  const Index grid = in.pmf.grid_size();

  const auto& pmf = require(j, "pmf");
  const std::string kind = require(pmf, "kind").get<std::string>();
  if (kind == "dense") {
    in.pmf.weights = parse_double_array(require(pmf, "values"), "pmf values");
    if (in.pmf.weights.size() != grid)
      fail(errc::bad_input,
           "dense pmf has " + std::to_string(in.pmf.weights.size()) +
               " values, expected " + std::to_string(grid));
  } else if (kind == "sparse") {
    in.pmf.weights = Vector::Zero(grid);
    const auto& cells = require(pmf, "cells");
    if (!cells.is_array())
      fail(errc::bad_input, "'cells' must be an array");
    std::set<Index> seen;
    for (const auto& entry : cells) {
      const auto& cell = require(entry, "cell");
      if (!cell.is_array() ||
          cell.size() != in.pmf.inputs.size())
        fail(errc::bad_input, "sparse cell must list one 0-based level "
                              "index per input");
      std::vector<int> coords;
      for (std::size_t i = 0; i < cell.size(); ++i) {
        const int c = cell[i].get<int>();
        const int m = static_cast<int>(in.pmf.inputs[i].levels.size());
        if (c < 0 || c >= m)
          fail(errc::bad_input, "sparse cell coordinate out of range");
        coords.push_back(c);
      }
      const Index ix = grid_index(in.pmf.inputs, coords);
      if (!seen.insert(ix).second)
        fail(errc::bad_input, "duplicate sparse cell");
      in.pmf.weights[ix] = require(entry, "p").get<double>();
    }
  } else {
    fail(errc::bad_input, "pmf kind must be 'dense' or 'sparse'");
  }

  in.model = parse_double_array(require(j, "model"), "model");
  if (in.model.size() != grid)
    fail(errc::bad_input, "model has " + std::to_string(in.model.size()) +
                              " values, expected " + std::to_string(grid) +
                              " (full grid, row-major)");
  if (!in.model.allFinite())
    fail(errc::bad_input, "model values must be finite");
  return in;
}

}  // namespace

ProblemInput parse_input(const std::string& text) {
  try {
    return parse_input_checked(nlohmann::json::parse(text));
  } catch (const nlohmann::json::exception& e) {
    fail(errc::bad_input, std::string("invalid input JSON: ") + e.what());
  }
}

ProblemInput load_input(const std::string& path) {
  return parse_input(read_file(path));
}

std::string format_double(double v) {
  if (!std::isfinite(v))
    fail(errc::bad_input, "refusing to serialize a non-finite number");
  if (v == 0.0) return "0";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

void escape_string(std::string& out, const std::string& s) {
  out += '"';
  for (unsigned char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      case '\b': out += "\\b"; break;
      case '\f': out += "\\f"; break;
      default:
        if (c < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += static_cast<char>(c);
        }
    }
  }
  out += '"';
}

bool contains_object(const OrderedJson& v) {
  if (v.is_object()) return true;
  if (v.is_array())
    for (const auto& e : v)
      if (contains_object(e)) return true;
  return false;
}

void write_value(std::string& out, const OrderedJson& v, int depth) {
  const std::string pad(2 * std::size_t(depth), ' ');
  const std::string pad_in(2 * std::size_t(depth + 1), ' ');
  switch (v.type()) {
    case nlohmann::detail::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad_in;
        escape_string(out, it.key());
        out += ": ";
        write_value(out, it.value(), depth + 1);
      }
      out += "\n" + pad + "}";
      return;
    }
    case nlohmann::detail::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      if (!contains_object(v)) {
        out += '[';
        bool first = true;
        for (const auto& e : v) {
          if (!first) out += ", ";
          first = false;
          write_value(out, e, depth);
        }
        out += ']';
        return;
      }
      out += "[\n";
      bool first = true;
      for (const auto& e : v) {
        if (!first) out += ",\n";
        first = false;
        out += pad_in;
        write_value(out, e, depth + 1);
      }
      out += "\n" + pad + "]";
      return;
    }
    case nlohmann::detail::value_t::string:
      escape_string(out, v.get_ref<const std::string&>());
      return;
    case nlohmann::detail::value_t::boolean:
      out += v.get<bool>() ? "true" : "false";
      return;
    case nlohmann::detail::value_t::number_integer:
      out += std::to_string(v.get<std::int64_t>());
      return;
    case nlohmann::detail::value_t::number_unsigned:
      out += std::to_string(v.get<std::uint64_t>());
      return;
    case nlohmann::detail::value_t::number_float:
      out += format_double(v.get<double>());
      return;
    default:
      out += "null";
      return;
  }
}

}  // namespace

std::string dump_json(const OrderedJson& value) {
  std::string out;
  write_value(out, value, 0);
  out += '\n';
  return out;
}

OrderedJson subset_json(SubsetMask a) {
  OrderedJson arr = OrderedJson::array();
  for (int i : subset_members(a)) arr.push_back(i);
  return arr;
}

OrderedJson vector_json(const Vector& v) {
  OrderedJson arr = OrderedJson::array();
  for (Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

std::string feshchenko_csv(const FeshchenkoMatrix& delta) {
  std::string out = "subset";
  for (SubsetMask a : delta.order) out += ",\"" + subset_label(a) + "\"";
  out += '\n';
  for (Index i = 0; i < static_cast<Index>(delta.order.size()); ++i) {
    out += '"' + subset_label(delta.order[i]) + '"';
    for (Index j = 0; j < static_cast<Index>(delta.order.size()); ++j)
      out += ',' + format_double(delta.entries(i, j));
    out += '\n';
  }
  return out;
}

}  // namespace hoeffding

// SPDX-License-Identifier: Apache-2.0
#include "psdblk/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "psdblk/errors.hpp"
#include "psdblk/rng.hpp"

namespace psdblk {

namespace {

void append_escaped(const std::string& s, std::string& out) {
  out.push_back('"');
  for (unsigned char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\b': out += "\\b"; break;
      case '\f': out += "\\f"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (c < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out.push_back(static_cast<char>(c));
        }
    }
  }
  out.push_back('"');
}

void append_double(double v, std::string& out) {
  if (!std::isfinite(v)) throw NotFinite("refusing to serialize a non-finite number");
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

// nlohmann objects iterate in key order already; arrays keep their order.
void dump_rec(const Json& j, std::string& out, int indent, int depth) {
  auto newline = [&](int d) {
    if (indent <= 0) return;
    out.push_back('\n');
    out.append(static_cast<size_t>(indent) * d, ' ');
  };
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out.push_back('{');
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out.push_back(',');
        first = false;
        newline(depth + 1);
        append_escaped(it.key(), out);
        out.push_back(':');
        if (indent > 0) out.push_back(' ');
        dump_rec(it.value(), out, indent, depth + 1);
      }
      newline(depth);
      out.push_back('}');
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out.push_back('[');
      bool first = true;
      for (const auto& item : j) {
        if (!first) out.push_back(',');
        first = false;
        newline(depth + 1);
        dump_rec(item, out, indent, depth + 1);
      }
      newline(depth);
      out.push_back(']');
      return;
    }
    case Json::value_t::string:
      append_escaped(j.get_ref<const std::string&>(), out);
      return;
    case Json::value_t::boolean:
      out += j.get<bool>() ? "true" : "false";
      return;
    case Json::value_t::number_integer:
      out += std::to_string(j.get<int64_t>());
      return;
    case Json::value_t::number_unsigned:
      out += std::to_string(j.get<uint64_t>());
      return;
    case Json::value_t::number_float:
      append_double(j.get<double>(), out);
      return;
    case Json::value_t::null:
      out += "null";
      return;
    default:
      throw ParseError("unsupported JSON value type");
  }
}

double read_double(const Json& j, const char* where) {
  if (!j.is_number()) throw ParseError(std::string("expected a number at ") + where);
  double v = j.get<double>();
  if (!std::isfinite(v)) throw ParseError(std::string("non-finite number at ") + where);
  return v;
}

const Json& field(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string("missing field '") + key + "'");
  return *it;
}

}  // namespace

std::string canonical_dump(const Json& j) {
  std::string out;
  dump_rec(j, out, 2, 0);
  out.push_back('\n');
  return out;
}

std::string canonical_compact(const Json& j) {
  std::string out;
  dump_rec(j, out, 0, 0);
  return out;
}

Json matrix_to_json(const ComplexMatrix& Z) {
  Json data = Json::array();
  for (Index i = 0; i < Z.rows(); ++i)
    for (Index j = 0; j < Z.cols(); ++j)
      data.push_back(Json::array({Z(i, j).real(), Z(i, j).imag()}));
  return Json{{"rows", Z.rows()}, {"cols", Z.cols()}, {"data", std::move(data)}};
}

ComplexMatrix matrix_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("matrix value must be an object");
  auto rows_j = field(j, "rows");
  auto cols_j = field(j, "cols");
  if (!rows_j.is_number_integer() && !rows_j.is_number_unsigned())
    throw ParseError("'rows' must be an integer");
  if (!cols_j.is_number_integer() && !cols_j.is_number_unsigned())
    throw ParseError("'cols' must be an integer");
  int64_t rows = rows_j.get<int64_t>();
  int64_t cols = cols_j.get<int64_t>();
  if (rows < 1 || cols < 1 || rows > 4096 || cols > 4096)
    throw ParseError("matrix dimensions out of range");
  const Json& data = field(j, "data");
  if (!data.is_array() || static_cast<int64_t>(data.size()) != rows * cols)
    throw ParseError("'data' length must equal rows * cols");
  ComplexMatrix Z(rows, cols);
  int64_t idx = 0;
  for (int64_t i = 0; i < rows; ++i) {
    for (int64_t c = 0; c < cols; ++c, ++idx) {
      const Json& cell = data[static_cast<size_t>(idx)];
      if (!cell.is_array() || cell.size() != 2)
        throw ParseError("matrix entries must be [re, im] pairs");
      Z(i, c) = Complex(read_double(cell[0], "entry re"), read_double(cell[1], "entry im"));
    }
  }
  return Z;
}

Json block_psd_to_json(const BlockPsd& M) {
  return Json{{"n", M.n},
              {"m", M.m},
              {"A", matrix_to_json(M.A)},
              {"X", matrix_to_json(M.X)},
              {"B", matrix_to_json(M.B)}};
}

BlockPsd block_psd_from_json(const Json& j, double tol) {
  if (!j.is_object()) throw ParseError("instance must be a JSON object");
  ComplexMatrix A = matrix_from_json(field(j, "A"));
  ComplexMatrix X = matrix_from_json(field(j, "X"));
  ComplexMatrix B = matrix_from_json(field(j, "B"));
  const Json& n_j = field(j, "n");
  const Json& m_j = field(j, "m");
  if (n_j.get<int64_t>() != A.rows() || m_j.get<int64_t>() != B.rows())
    throw ParseError("'n'/'m' fields disagree with block shapes");
  return validate_block_psd(A, X, B, tol);
}

Json decomposition_to_json(const Decomposition& D) {
  return Json{{"U", matrix_to_json(D.U)},
              {"V", matrix_to_json(D.V)},
              {"top", matrix_to_json(D.top_payload)},
              {"bottom", matrix_to_json(D.bottom_payload)},
              {"reconstruction_residual", D.reconstruction_residual},
              {"unitarity_residual", D.unitarity_residual}};
}

uint64_t fingerprint64(const BlockPsd& M) {
  return fnv1a64(canonical_compact(block_psd_to_json(M)));
}

uint64_t fingerprint64_pair(const ComplexMatrix& S, const ComplexMatrix& T) {
  Json j{{"S", matrix_to_json(S)}, {"T", matrix_to_json(T)}};
  return fnv1a64(canonical_compact(j));
}

std::string fingerprint_hex(uint64_t fp) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fp));
  return buf;
}

}  // namespace psdblk

#include "quatlas/io.hpp"

#include <cmath>
#include <fstream>

namespace quatlas {

using nlohmann::json;

namespace {

const char* const kKeys[3] = {"nabla_omega_I", "nabla_omega_J", "nabla_omega_K"};

void expect_array(const json& j, std::size_t len, const std::string& where) {
  if (!j.is_array()) throw SchemaError(where + ": expected an array");
  if (j.size() != len)
    throw SchemaError(where + ": expected " + std::to_string(len) + " entries, got " +
                      std::to_string(j.size()));
}

Tensor tensor_from(const json& j, int N, const std::string& key) {
  Tensor t(N, 3);
  expect_array(j, N, key);
  for (int x = 0; x < N; ++x) {
    const std::string wx = key + "[" + std::to_string(x) + "]";
    expect_array(j[x], N, wx);
    for (int y = 0; y < N; ++y) {
      const json& row = j[x][y];
      const std::string wy = wx + "[" + std::to_string(y) + "]";
      expect_array(row, N, wy);
      for (int z = 0; z < N; ++z) {
        if (!row[z].is_number())
          throw SchemaError(wy + "[" + std::to_string(z) + "]: not a number");
        const double v = row[z].get<double>();
        if (!std::isfinite(v)) throw SchemaError(wy + "[" + std::to_string(z) + "]: not finite");
        t(x, y, z) = v;
      }
    }
  }
  return t;
}

}  // namespace

TripleFile triple_from_json(const json& doc) {
  if (!doc.is_object()) throw SchemaError("top level must be an object");
  if (doc.contains("schema") && doc["schema"] != 1) throw SchemaError("unsupported schema version");
  if (!doc.contains("n") || !doc["n"].is_number_integer())
    throw SchemaError("missing integer field \"n\"");
  TripleFile out;
  out.n = doc["n"].get<int>();
  if (out.n < 1) throw SchemaError("\"n\" must be at least 1");
  const int N = 4 * out.n;
  for (int k = 0; k < 3; ++k) {
    if (!doc.contains(kKeys[k])) throw SchemaError(std::string("missing field \"") + kKeys[k] + "\"");
    out.triple.nabla_omega[k] = tensor_from(doc[kKeys[k]], N, kKeys[k]);
  }
  return out;
}

json triple_to_json(int n, const TorsionTriple& t) {
  const int N = 4 * n;
  json doc;
  doc["schema"] = 1;
  doc["n"] = n;
  for (int k = 0; k < 3; ++k) {
    if (t.nabla_omega[k].dim() != N || t.nabla_omega[k].order() != 3)
      throw std::invalid_argument("triple_to_json: tensor shape does not match n");
    json a = json::array();
    for (int x = 0; x < N; ++x) {
      json b = json::array();
      for (int y = 0; y < N; ++y) {
        json c = json::array();
        for (int z = 0; z < N; ++z) c.push_back(t.nabla_omega[k](x, y, z));
        b.push_back(std::move(c));
      }
      a.push_back(std::move(b));
    }
    doc[kKeys[k]] = std::move(a);
  }
  return doc;
}

TripleFile read_triple_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw SchemaError(path + ": " + e.what());
  }
  return triple_from_json(doc);
}

void write_triple_file(const std::string& path, int n, const TorsionTriple& t) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  // dump() prints shortest round-trip decimals, so re-reading is exact
  out << triple_to_json(n, t).dump() << '\n';
}

}  // namespace quatlas

#pragma once

// JSON schemas for the CLI: presentations {g,n}, mapping classes
// {label, forward, backward, ...}, representations {g,n,field,p?,r,assign},
// generator set files, coinvariant reports and atlases.  Scalars are
// serialized as exact strings ("num/den" over Q, decimal residues over GF(p),
// decimal strings for integers).

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "surfrep/enumerate.hpp"
#include "surfrep/gensets.hpp"
#include "surfrep/homology.hpp"
#include "surfrep/representation.hpp"
#include "surfrep/rho.hpp"

namespace surfrep::io {

using nlohmann::json;

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string fnv1a64(const std::string& data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// parse errors surface with nlohmann's line/column diagnostics attached
inline json parse_json(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw input_error(origin + ": " + e.what());
  }
}

inline json load_json_file(const std::string& path) { return parse_json(read_file(path), path); }

inline json presentation_to_json(const Presentation& p) {
  return json{{"g", p.alphabet.genus}, {"n", p.alphabet.punctures}};
}

inline Presentation presentation_from_json(const json& j) {
  if (!j.contains("g") || !j.contains("n")) throw input_error("presentation needs fields g and n");
  const int g = j.at("g").get<int>(), n = j.at("n").get<int>();
  if (g < 0 || n < 0) throw input_error("presentation: g and n must be nonnegative");
  return Presentation{Alphabet{g, n}};
}

inline json mapping_class_to_json(const MappingClass& f) {
  const Alphabet& ab = f.presentation().alphabet;
  json fwd = json::object(), bwd = json::object();
  for (int s = 0; s < ab.symbol_count(); ++s) {
    fwd[ab.symbol_name(s)] = f.forward(s).str(ab);
    bwd[ab.symbol_name(s)] = f.backward(s).str(ab);
  }
  json out{{"label", f.label()}, {"forward", fwd}, {"backward", bwd}, {"pure", f.pure()}};
  if (f.twist()) {
    out["twist"] = json{{"h1_class", f.twist()->h1_class}, {"sign", f.twist()->sign}};
  }
  return out;
}

inline MappingClass mapping_class_from_json(const json& j, const Presentation& pres) {
  const Alphabet& ab = pres.alphabet;
  if (j.contains("g") && j.contains("n")) {
    if (j.at("g").get<int>() != ab.genus || j.at("n").get<int>() != ab.punctures) {
      throw input_error("mapping class presentation does not match the expected (g,n)");
    }
  }
  const std::string label = j.value("label", "unnamed");
  if (!j.contains("forward") || !j.contains("backward")) {
    throw input_error("mapping class '" + label + "' needs forward and backward maps");
  }
  auto read_map = [&](const json& m) {
    std::vector<Word> images(ab.symbol_count());
    for (int s = 0; s < ab.symbol_count(); ++s) {
      const std::string name = ab.symbol_name(s);
      if (!m.contains(name)) {
        throw input_error("mapping class '" + label + "': missing image for " + name);
      }
      images[s] = Word::parse(ab, m.at(name).get<std::string>());
    }
    return images;
  };
  std::optional<TwistData> twist;
  if (j.contains("twist")) {
    TwistData t;
    t.h1_class = j.at("twist").at("h1_class").get<std::vector<long long>>();
    t.sign = j.at("twist").at("sign").get<int>();
    twist = std::move(t);
  }
  try {
    return MappingClass::create(pres, label, read_map(j.at("forward")), read_map(j.at("backward")),
                                j.value("pure", false), std::move(twist));
  } catch (const validation_error& e) {
    throw input_error(std::string("mapping class failed validation: ") + e.what());
  }
}

inline json genset_to_json(const GeneratorSet& S) {
  json classes = json::array();
  for (const MappingClass& f : S.classes) classes.push_back(mapping_class_to_json(f));
  return json{{"name", S.name},
              {"presentation", presentation_to_json(S.pres)},
              {"provenance", S.provenance},
              {"classes", classes}};
}

inline GeneratorSet genset_from_json(const json& j) {
  GeneratorSet S;
  S.pres = presentation_from_json(j.at("presentation"));
  S.name = j.value("name", "unnamed");
  S.provenance = j.value("provenance", "");
  for (const json& c : j.at("classes")) S.classes.push_back(mapping_class_from_json(c, S.pres));
  try {
    S.validate();
  } catch (const validation_error& e) {
    throw input_error(std::string("generator set failed validation: ") + e.what());
  }
  return S;
}

inline json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j2 = 0; j2 < m.cols(); ++j2) row.push_back(m.at(i, j2).str());
    rows.push_back(row);
  }
  return rows;
}

inline Matrix matrix_from_json(const json& j, FieldTag field, int rows, int cols) {
  Matrix m(field, rows, cols);
  if (static_cast<int>(j.size()) != rows) throw input_error("matrix row count mismatch");
  for (int i = 0; i < rows; ++i) {
    const json& row = j.at(i);
    if (static_cast<int>(row.size()) != cols) throw input_error("matrix column count mismatch");
    for (int c = 0; c < cols; ++c) {
      const json& cell = row.at(c);
      const std::string text = cell.is_string() ? cell.get<std::string>() : cell.dump();
      m.at(i, c) = Scalar::parse(field, text);
    }
  }
  return m;
}

inline FieldTag field_from_json(const json& j) {
  const std::string f = j.at("field").get<std::string>();
  if (f == "Q") return FieldTag::rationals();
  if (f == "Fp") {
    if (!j.contains("p")) throw input_error("field Fp needs a prime p");
    return FieldTag::prime(j.at("p").get<long long>());
  }
  throw input_error("unknown field '" + f + "' (expected \"Q\" or \"Fp\")");
}

inline json representation_to_json(const Representation& rep) {
  const Alphabet& ab = rep.presentation().alphabet;
  json assign = json::object();
  for (int s = 0; s < ab.symbol_count(); ++s) assign[ab.symbol_name(s)] = matrix_to_json(rep.matrix(s));
  json out{{"g", ab.genus},
           {"n", ab.punctures},
           {"field", rep.field().is_rational() ? "Q" : "Fp"},
           {"r", rep.dim()},
           {"assign", assign}};
  if (rep.field().is_prime_field()) out["p"] = rep.field().modulus();
  return out;
}

inline Representation representation_from_json(const json& j) {
  const Presentation pres = presentation_from_json(j);
  const FieldTag field = field_from_json(j);
  const int r = j.at("r").get<int>();
  if (r < 1) throw input_error("representation dimension must be positive");
  const Alphabet& ab = pres.alphabet;
  const json& assign = j.at("assign");
  std::vector<Matrix> mats;
  mats.reserve(ab.symbol_count());
  for (int s = 0; s < ab.symbol_count(); ++s) {
    const std::string name = ab.symbol_name(s);
    if (!assign.contains(name)) throw input_error("representation: missing matrix for " + name);
    mats.push_back(matrix_from_json(assign.at(name), field, r, r));
  }
  return Representation::create(pres, field, r, std::move(mats));
}

inline json coinvariants_to_json(const CoinvariantReport& rep) {
  json diag = json::array();
  for (const mpz_class& d : rep.smith_diagonal) diag.push_back(d.get_str());
  json tors = json::array();
  for (const mpz_class& t : rep.torsion) tors.push_back(t.get_str());
  return json{{"rank", rep.rank},
              {"smith_diagonal", diag},
              {"free_rank", rep.free_rank},
              {"torsion", tors},
              {"zero", rep.is_zero}};
}

inline json characters_to_json(const CharacterFixedReport& rep) {
  return json{{"q", rep.q},
              {"primitive_root", rep.primitive_root},
              {"rank", rep.rank},
              {"count", rep.count()},
              {"only_trivial", rep.only_trivial()},
              {"exponents", rep.exponents},
              {"values", rep.values}};
}

inline json atlas_to_json(const Atlas& a) {
  json hist = json::array();
  for (const auto& [size, count] : a.orbit_histogram) {
    hist.push_back(json{{"orbit_size", size}, {"count", count}});
  }
  json fixed = json::array();
  for (const Representation& rep : a.fixed_representatives) fixed.push_back(representation_to_json(rep));
  return json{{"g", a.g},
              {"n", a.n},
              {"r", a.r},
              {"p", a.p},
              {"mode", a.mode},
              {"genset", a.genset_name},
              {"field_note", "empirical over GF(p); no characteristic-0 claim"},
              {"total_homs", a.total_homs},
              {"class_count", a.class_count},
              {"orbit_histogram", hist},
              {"fixed_classes", fixed},
              {"inconclusive", a.inconclusive}};
}

}  // namespace surfrep::io

#include "l1rank/io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "l1rank/error.hpp"

namespace l1rank {

namespace {

const std::set<std::string> kInstanceFields = {"m",         "n",       "k",         "vectors",
                                               "relations", "partition", "offsets", "provenance"};

const Json& field(const Json& j, const char* name) {
  auto it = j.find(name);
  if (it == j.end()) throw ParseError(std::string("missing field '") + name + "'");
  return *it;
}

std::size_t as_count(const Json& j, const std::string& what) {
  if (!j.is_number_integer() || j.get<long long>() < 0) {
    throw ParseError(what + " must be a non-negative integer");
  }
  return j.get<std::size_t>();
}

BitVec as_bits(const Json& j, const std::string& what) {
  if (!j.is_string()) throw ParseError(what + " must be a 0/1 string");
  const auto s = j.get<std::string>();
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '0' && s[i] != '1') {
      throw ParseError(what + ": invalid character at offset " + std::to_string(i));
    }
  }
  return BitVec::from_string(s);
}

}  // namespace

InstanceDocument parse_instance_json(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("instance JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("instance JSON must be an object");
  for (const auto& [key, value] : j.items()) {
    if (!kInstanceFields.count(key)) throw ParseError("unknown instance field '" + key + "'");
  }

  const std::size_t m = as_count(field(j, "m"), "m");
  const std::size_t n = as_count(field(j, "n"), "n");
  const std::size_t k = as_count(field(j, "k"), "k");
  if (k == 0 || k > kMaxArity) throw ParseError("k must lie in 1..64");

  const Json& vj = field(j, "vectors");
  if (!vj.is_array() || vj.size() != n) throw ParseError("vectors must be an array of n strings");
  std::vector<BitVec> vectors;
  for (std::size_t x = 0; x < n; ++x) {
    BitVec v = as_bits(vj[x], "vectors[" + std::to_string(x) + "]");
    if (v.size() != m) throw ParseError("vectors[" + std::to_string(x) + "] has length != m");
    vectors.push_back(std::move(v));
  }

  const Json& rj = field(j, "relations");
  if (!rj.is_array() || rj.size() != m) throw ParseError("relations must be an array of m arrays");
  std::vector<Relation> relations;
  for (std::size_t p = 0; p < m; ++p) {
    const std::string where = "relations[" + std::to_string(p) + "]";
    if (!rj[p].is_array()) throw ParseError(where + " must be an array");
    std::vector<std::string> tuples;
    for (const auto& t : rj[p]) {
      if (!t.is_string() || t.get<std::string>().size() != k) {
        throw ParseError(where + " entries must be strings of length k");
      }
      tuples.push_back(t.get<std::string>());
    }
    try {
      relations.push_back(Relation::from_strings(tuples));
    } catch (const Error& e) {
      throw ParseError(where + ": " + e.what());
    }
  }

  InstanceDocument doc;
  try {
    doc.instance =
        std::make_shared<const KCenterInstance>(std::move(vectors), k, std::move(relations), m);
  } catch (const Error& e) {
    throw ParseError(std::string("invalid instance: ") + e.what());
  }

  if (auto it = j.find("partition"); it != j.end()) {
    if (!it->is_array() || it->size() != n) throw ParseError("partition must have n entries");
    Partition p;
    for (const auto& c : *it) {
      const std::size_t label = as_count(c, "partition label");
      if (label < 1 || label > k) throw ParseError("partition labels must lie in 1..k");
      p.push_back(static_cast<std::uint32_t>(label - 1));
    }
    doc.partition = std::move(p);
  }
  if (auto it = j.find("offsets"); it != j.end()) {
    if (!it->is_array() || it->size() != n) throw ParseError("offsets must have n entries");
    std::vector<std::size_t> offsets;
    for (const auto& d : *it) offsets.push_back(as_count(d, "offset"));
    doc.offsets = std::move(offsets);
  }
  if (auto it = j.find("provenance"); it != j.end()) doc.provenance = *it;
  return doc;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
}

InstanceDocument read_instance_file(const std::string& path) {
  return parse_instance_json(read_text_file(path));
}

Json instance_to_json(const KCenterInstance& inst, const Partition* partition,
                      const std::vector<std::size_t>* offsets, const Json* provenance) {
  Json j;
  j["m"] = inst.m();
  j["n"] = inst.n();
  j["k"] = inst.k();
  Json vectors = Json::array();
  for (const auto& v : inst.vectors()) vectors.push_back(v.to_string());
  j["vectors"] = std::move(vectors);
  Json relations = Json::array();
  for (const auto& r : inst.relations()) relations.push_back(r.to_strings());
  j["relations"] = std::move(relations);
  if (partition) {
    Json p = Json::array();
    for (auto c : *partition) p.push_back(c + 1);
    j["partition"] = std::move(p);
  }
  if (offsets) j["offsets"] = *offsets;
  if (provenance) j["provenance"] = *provenance;
  return j;
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

Json report_to_json(const SolveReport& r, bool timing) {
  Json j;
  j["problem"] = r.problem;
  j["cost"] = r.cost;
  Json centers = Json::array();
  for (const auto& c : r.centers.centers()) centers.push_back(c.to_string());
  j["centers"] = std::move(centers);
  if (r.partition) {
    Json p = Json::array();
    for (auto c : *r.partition) p.push_back(c + 1);
    j["partition"] = std::move(p);
  }
  j["lp_lower_bound"] = r.lp_lower_bound ? Json(*r.lp_lower_bound) : Json(nullptr);
  j["path"] = to_string(r.path);
  j["seed"] = r.seed;
  if (r.guess) {
    Json g;
    // Trailing repeats of the last member are padding and are dropped.
    Json members = Json::array();
    std::size_t r_size = 0;
    for (const auto& cluster : r.guess->members) {
      r_size = std::max(r_size, cluster.size());
      auto end = cluster.end();
      while (end - cluster.begin() > 1 && *(end - 1) == *(end - 2)) --end;
      members.push_back(std::vector<std::uint32_t>(cluster.begin(), end));
    }
    g["r"] = r_size;
    g["members"] = std::move(members);
    g["agreement_size"] = r.guess->agreement_size;
    g["free_size"] = r.guess->free_size;
    g["sampled"] = r.guess->sampled;
    j["guess"] = std::move(g);
  }
  if (r.family) {
    Json f;
    f["member"] = r.family->member;
    f["ell"] = r.family->ell;
    f["guess"] = r.family->guess;
    f["family_size"] = r.family->family_size;
    f["sketch_dim"] = r.family->sketch_dim;
    f["sampled"] = r.family->sampled;
    f["shortcut"] = r.family->shortcut;
    j["family"] = std::move(f);
  }
  j["guesses_evaluated"] = r.guesses_evaluated;
  j["roundings"] = r.roundings;
  j["caveats"] = r.caveats;
  if (timing) j["wall_ms"] = r.wall_ms;
  return j;
}

CenterTuple centers_from_json(const Json& j) {
  const Json& arr = j.is_array() ? j : field(j, "centers");
  if (!arr.is_array() || arr.empty()) throw ParseError("centers must be a non-empty array");
  std::vector<BitVec> centers;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    centers.push_back(as_bits(arr[i], "centers[" + std::to_string(i) + "]"));
    if (centers.back().size() != centers.front().size()) {
      throw ParseError("centers have differing lengths");
    }
  }
  return CenterTuple(std::move(centers));
}

Json family_to_json(const PartitionFamily& family) {
  Json j;
  j["mode"] = to_string(family.mode);
  j["seed"] = family.seed;
  j["sketch_dim"] = family.sketch_dim;
  j["ells"] = family.ells;
  j["densities"] = family.densities;
  j["guesses_per_ell"] = family.guesses_per_ell;
  j["shortcut"] = family.shortcut;
  j["caveats"] = family.caveats;
  Json members = Json::array();
  for (const auto& m : family.members) {
    Json prov;
    prov["ell"] = m.ell;
    prov["seed"] = family.seed;
    prov["guess"] = m.guess;
    Json sketched = Json::array();
    for (const auto& c : m.sketched.centers()) sketched.push_back(c.to_string());
    prov["sketched_centers"] = std::move(sketched);
    members.push_back(instance_to_json(m.instance.base(), &m.instance.partition(), nullptr, &prov));
  }
  j["members"] = std::move(members);
  return j;
}

}  // namespace l1rank

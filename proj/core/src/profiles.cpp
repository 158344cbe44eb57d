#include "gottcalc/profiles.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <json.hpp>

#include "gottcalc/decompose.hpp"
#include "gottcalc/error.hpp"

namespace gottcalc {

using nlohmann::json;

// ---------------------------------------------------------------------------
// GradedGroup

GradedGroup::GradedGroup(std::map<Degree, AbelianGroup> entries, std::optional<Degree> zero_above) {
  set_zero_above(zero_above);
  for (auto& [d, g] : entries) set(d, std::move(g));
}

std::optional<AbelianGroup> GradedGroup::lookup(Degree d) const {
  if (d < 1) throw DomainError("degrees start at 1, got " + std::to_string(d));
  if (auto it = entries_.find(d); it != entries_.end()) return it->second;
  if (zero_above_ && d > *zero_above_) return AbelianGroup{};
  return std::nullopt;
}

void GradedGroup::set(Degree d, AbelianGroup g) {
  if (d < 1) throw DomainError("degrees start at 1, got " + std::to_string(d));
  if (zero_above_ && d > *zero_above_) {
    throw DomainError("entry at degree " + std::to_string(d) + " lies above zero_above " +
                      std::to_string(*zero_above_));
  }
  entries_[d] = std::move(g);
}

void GradedGroup::set_zero_above(std::optional<Degree> bound) {
  if (bound && *bound < 0) throw DomainError("zero_above must be non-negative");
  if (bound && !entries_.empty() && entries_.rbegin()->first > *bound) {
    throw DomainError("zero_above " + std::to_string(*bound) + " is below an explicit entry");
  }
  zero_above_ = bound;
}

GradedGroup shifted_down(const GradedGroup& g, Degree by) {
  if (by < 0) throw DomainError("shift must be non-negative");
  GradedGroup out;
  if (g.zero_above()) out.set_zero_above(std::max<Degree>(0, *g.zero_above() - by));
  for (const auto& [d, grp] : g.entries()) {
    if (d - by >= 1) out.set(d - by, grp);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Database

namespace {

// S<n>, T<n>, B<n>: allowed as profile names so sphere tables can be supplied.
bool is_numbered_name(std::string_view s) {
  return s.size() > 1 && (s[0] == 'S' || s[0] == 'T' || s[0] == 'B') &&
         std::all_of(s.begin() + 1, s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

void validate_space(const SpaceProfile& p) {
  const std::string base = "spaces." + p.name;
  if (!is_identifier(p.name)) throw ProfileError(base, "space names must be identifiers");
  if (is_reserved_name(p.name) && !is_numbered_name(p.name)) {
    throw ProfileError(base, "'" + p.name + "' is a reserved word of the expression grammar");
  }
  if (p.betti) {
    if (p.betti->empty() || p.betti->front() != 1) {
      throw ProfileError(base + ".betti", "betti[0] must be 1 (spaces are connected)");
    }
    for (const auto& b : *p.betti) {
      if (b < 0) throw ProfileError(base + ".betti", "Betti numbers must be non-negative");
    }
  }
  if (p.suspension_shifts) {
    for (Degree i : *p.suspension_shifts) {
      if (i < 1) throw ProfileError(base + ".suspension_shifts", "shifts must be at least 1");
    }
  }
  if (p.flags.t_space == true && p.flags.g_space == false) {
    throw ProfileError(base + ".flags", "a T-space is always a G-space; t_space=true contradicts g_space=false");
  }
  if (p.flags.g_space == true && p.homotopy) {
    std::set<Degree> degrees;
    for (const auto& [d, g] : p.gottlieb.entries()) degrees.insert(d);
    for (const auto& [d, g] : p.homotopy->entries()) degrees.insert(d);
    for (Degree d : degrees) {
      auto a = p.gottlieb.lookup(d);
      auto b = p.homotopy->lookup(d);
      if (a && b && *a != *b) {
        throw ProfileError(base, "g_space is true but gottlieb and homotopy differ in degree " + std::to_string(d));
      }
    }
  }
}

}  // namespace

void ProfileDatabase::add_space(SpaceProfile profile) {
  validate_space(profile);
  std::string key = profile.name;
  spaces_.insert_or_assign(std::move(key), std::move(profile));
}

void ProfileDatabase::add_map(MapProfile profile) {
  const std::string base = "maps." + profile.name;
  if (profile.name.empty()) throw ProfileError(base, "map names must be non-empty");
  for (const auto* end : {&profile.source, &profile.target}) {
    if (find_space(*end) == nullptr) throw ProfileError(base, "references unknown space \"" + *end + "\"");
  }
  if (profile.is_identity) {
    if (profile.source != profile.target) throw ProfileError(base, "identity map must have source == target");
    const auto& own = space(profile.source).gottlieb;
    for (const auto& [d, g] : profile.relative_gottlieb.entries()) {
      auto expected = own.lookup(d);
      if (expected && *expected != g) {
        throw ProfileError(base + ".relative_gottlieb",
                           "identity map must agree with the Gottlieb table in degree " + std::to_string(d));
      }
    }
  }
  std::string key = profile.name;
  maps_.insert_or_assign(std::move(key), std::move(profile));
}

ProfileDatabase ProfileDatabase::with_space(SpaceProfile profile) const {
  ProfileDatabase out = *this;
  out.add_space(std::move(profile));
  return out;
}

const SpaceProfile* ProfileDatabase::find_space(std::string_view name) const {
  auto it = spaces_.find(name);
  return it == spaces_.end() ? nullptr : &it->second;
}

const SpaceProfile& ProfileDatabase::space(std::string_view name) const {
  if (const auto* p = find_space(name)) return *p;
  throw ProfileError("", "no profile for space \"" + std::string(name) + "\"");
}

const MapProfile& ProfileDatabase::map(std::string_view name) const {
  auto it = maps_.find(name);
  if (it == maps_.end()) throw ProfileError("", "no profile for map \"" + std::string(name) + "\"");
  return it->second;
}

DeclaredShifts ProfileDatabase::declared_shifts() const {
  DeclaredShifts out;
  for (const auto& [name, p] : spaces_) {
    if (p.suspension_shifts) out.emplace(name, *p.suspension_shifts);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Document codec

namespace {

[[noreturn]] void schema(const std::string& path, const std::string& reason) { throw ProfileError(path, reason); }

void only_keys(const json& obj, const std::string& path, std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object()) schema(path, "expected an object");
  for (const auto& [key, value] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      schema(path, "unknown key \"" + key + "\"");
    }
  }
}

BigInt read_count(const json& v, const std::string& path) {
  if (v.is_number_unsigned()) return BigInt(v.get<std::uint64_t>());
  if (v.is_number_integer()) {
    auto x = v.get<std::int64_t>();
    if (x < 0) schema(path, "expected a non-negative integer");
    return BigInt(x);
  }
  if (v.is_string()) {
    const auto& s = v.get_ref<const std::string&>();
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      schema(path, "expected a non-negative integer");
    }
    return BigInt(s);
  }
  schema(path, "expected a non-negative integer");
}

json write_count(const BigInt& v) {
  if (v <= std::numeric_limits<std::uint64_t>::max()) return v.convert_to<std::uint64_t>();
  return v.str();
}

Degree read_degree_key(const std::string& key, const std::string& path) {
  if (key.empty() || key.size() > 18 || key[0] == '0' ||
      !std::all_of(key.begin(), key.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    schema(path, "degree keys must be decimal integers >= 1");
  }
  return std::stoll(key);
}

Degree read_small_int(const json& v, const std::string& path, Degree min) {
  if (!v.is_number_integer()) schema(path, "expected an integer");
  auto x = v.get<std::int64_t>();
  if (x < min) schema(path, "expected an integer >= " + std::to_string(min));
  return x;
}

AbelianGroup read_group(const json& v, const std::string& path) {
  try {
    if (v.is_string()) return parse_group(v.get_ref<const std::string&>());
    only_keys(v, path, {"rank", "torsion"});
    BigInt r = v.contains("rank") ? read_count(v["rank"], path + ".rank") : BigInt(0);
    std::vector<PrimePower> torsion;
    if (v.contains("torsion")) {
      const auto& t = v["torsion"];
      if (!t.is_array()) schema(path + ".torsion", "expected an array of [p, k] pairs");
      for (std::size_t i = 0; i < t.size(); ++i) {
        const std::string at = path + ".torsion." + std::to_string(i);
        if (!t[i].is_array() || t[i].size() != 2) schema(at, "expected a [p, k] pair");
        Degree p = read_small_int(t[i][0], at, 2);
        Degree k = read_small_int(t[i][1], at, 1);
        if (k > std::numeric_limits<std::uint32_t>::max()) schema(at, "exponent too large");
        torsion.push_back({static_cast<std::uint64_t>(p), static_cast<std::uint32_t>(k)});
      }
    }
    return from_primary(r, torsion);
  } catch (const ProfileError&) {
    throw;
  } catch (const Error& e) {
    schema(path, e.what());
  }
}

json write_group(const AbelianGroup& g) {
  json torsion = json::array();
  for (const auto& pp : g.torsion_list()) torsion.push_back({pp.prime, pp.exponent});
  return json{{"rank", write_count(g.rank())}, {"torsion", std::move(torsion)}};
}

GradedGroup read_graded(const json& v, const std::string& path) {
  only_keys(v, path, {"entries", "zero_above"});
  GradedGroup out;
  try {
    if (v.contains("zero_above") && !v["zero_above"].is_null()) {
      out.set_zero_above(read_small_int(v["zero_above"], path + ".zero_above", 0));
    }
    if (v.contains("entries")) {
      const auto& e = v["entries"];
      if (!e.is_object()) schema(path + ".entries", "expected an object keyed by degree");
      for (const auto& [key, group] : e.items()) {
        const std::string at = path + ".entries." + key;
        out.set(read_degree_key(key, at), read_group(group, at));
      }
    }
  } catch (const ProfileError&) {
    throw;
  } catch (const Error& e) {
    schema(path, e.what());
  }
  return out;
}

json write_graded(const GradedGroup& g) {
  json entries = json::object();
  for (const auto& [d, grp] : g.entries()) entries[std::to_string(d)] = write_group(grp);
  json out{{"entries", std::move(entries)}};
  if (g.zero_above()) out["zero_above"] = *g.zero_above();
  return out;
}

std::optional<bool> read_flag(const json& flags, const char* key, const std::string& path) {
  if (!flags.contains(key) || flags[key].is_null()) return std::nullopt;
  if (!flags[key].is_boolean()) schema(path + "." + key, "expected true, false or null");
  return flags[key].get<bool>();
}

SpaceProfile read_space(const std::string& name, const json& v, const std::string& path) {
  only_keys(v, path, {"betti", "flags", "suspension_shifts", "gottlieb", "homotopy"});
  SpaceProfile p;
  p.name = name;
  if (v.contains("betti")) {
    const auto& b = v["betti"];
    if (!b.is_array()) schema(path + ".betti", "expected an array of integers");
    std::vector<BigInt> betti;
    for (std::size_t i = 0; i < b.size(); ++i) betti.push_back(read_count(b[i], path + ".betti." + std::to_string(i)));
    p.betti = std::move(betti);
  }
  if (v.contains("flags")) {
    const auto& f = v["flags"];
    const std::string at = path + ".flags";
    only_keys(f, at, {"simply_connected", "finite", "g_space", "t_space"});
    p.flags.simply_connected = read_flag(f, "simply_connected", at);
    p.flags.finite = read_flag(f, "finite", at);
    p.flags.g_space = read_flag(f, "g_space", at);
    p.flags.t_space = read_flag(f, "t_space", at);
  }
  if (v.contains("suspension_shifts") && !v["suspension_shifts"].is_null()) {
    const auto& s = v["suspension_shifts"];
    if (!s.is_array()) schema(path + ".suspension_shifts", "expected an array of integers");
    std::vector<Degree> shifts;
    for (std::size_t i = 0; i < s.size(); ++i) {
      shifts.push_back(read_small_int(s[i], path + ".suspension_shifts." + std::to_string(i), 1));
    }
    p.suspension_shifts = std::move(shifts);
  }
  if (v.contains("gottlieb")) p.gottlieb = read_graded(v["gottlieb"], path + ".gottlieb");
  if (v.contains("homotopy") && !v["homotopy"].is_null()) p.homotopy = read_graded(v["homotopy"], path + ".homotopy");
  return p;
}

MapProfile read_map(const std::string& name, const json& v, const std::string& path) {
  only_keys(v, path, {"source", "target", "is_identity", "relative_gottlieb"});
  MapProfile m;
  m.name = name;
  for (const char* key : {"source", "target"}) {
    if (!v.contains(key) || !v[key].is_string()) schema(path + "." + key, "expected a space name");
  }
  m.source = v["source"].get<std::string>();
  m.target = v["target"].get<std::string>();
  if (v.contains("is_identity")) {
    if (!v["is_identity"].is_boolean()) schema(path + ".is_identity", "expected a boolean");
    m.is_identity = v["is_identity"].get<bool>();
  }
  if (v.contains("relative_gottlieb")) m.relative_gottlieb = read_graded(v["relative_gottlieb"], path + ".relative_gottlieb");
  return m;
}

}  // namespace

ProfileDatabase load_profiles(std::string_view document) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    throw ProfileError("", std::string("malformed document: ") + e.what());
  }
  only_keys(doc, "", {"spaces", "maps"});
  ProfileDatabase db;
  if (doc.contains("spaces")) {
    if (!doc["spaces"].is_object()) schema("spaces", "expected an object keyed by space name");
    for (const auto& [name, v] : doc["spaces"].items()) db.add_space(read_space(name, v, "spaces." + name));
  }
  if (doc.contains("maps")) {
    if (!doc["maps"].is_object()) schema("maps", "expected an object keyed by map name");
    for (const auto& [name, v] : doc["maps"].items()) db.add_map(read_map(name, v, "maps." + name));
  }
  return db;
}

ProfileDatabase load_profiles_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ProfileError(path.string(), "cannot open profile file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_profiles(buf.str());
}

std::string save_profiles(const ProfileDatabase& db) {
  json spaces = json::object();
  for (const auto& [name, p] : db.spaces()) {
    json s = json::object();
    if (p.betti) {
      json b = json::array();
      for (const auto& x : *p.betti) b.push_back(write_count(x));
      s["betti"] = std::move(b);
    }
    json flags = json::object();
    auto put = [&](const char* key, const std::optional<bool>& f) {
      if (f) flags[key] = *f;
    };
    put("simply_connected", p.flags.simply_connected);
    put("finite", p.flags.finite);
    put("g_space", p.flags.g_space);
    put("t_space", p.flags.t_space);
    s["flags"] = std::move(flags);
    if (p.suspension_shifts) s["suspension_shifts"] = *p.suspension_shifts;
    s["gottlieb"] = write_graded(p.gottlieb);
    if (p.homotopy) s["homotopy"] = write_graded(*p.homotopy);
    spaces[name] = std::move(s);
  }
  json maps = json::object();
  for (const auto& [name, m] : db.maps()) {
    maps[name] = json{{"source", m.source},
                      {"target", m.target},
                      {"is_identity", m.is_identity},
                      {"relative_gottlieb", write_graded(m.relative_gottlieb)}};
  }
  json doc{{"spaces", std::move(spaces)}, {"maps", std::move(maps)}};
  return doc.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Evaluation

Evaluation evaluate(const FormalSum& sum, const ProfileDatabase& db) {
  AbelianGroup total;
  std::vector<std::string> unresolved;
  for (const auto& [term, count] : sum.terms()) {
    std::optional<AbelianGroup> value;
    std::string why = "degree " + std::to_string(term.degree) + " unknown";
    switch (term.kind) {
      case TermKind::Gottlieb:
        value = db.space(term.space).gottlieb.lookup(term.degree);
        break;
      case TermKind::Homotopy: {
        const auto& p = db.space(term.space);
        if (p.homotopy) {
          value = p.homotopy->lookup(term.degree);
        } else {
          why = "no homotopy table";
        }
        break;
      }
      case TermKind::Relative:
        value = db.map(term.space).relative_gottlieb.lookup(term.degree);
        break;
      case TermKind::GenGottlieb:
        why = "residual generalized Gottlieb group";
        break;
    }
    if (value) {
      total += value->multiple(count);
    } else {
      unresolved.push_back(to_string(term) + ": " + why);
    }
  }
  if (unresolved.empty()) return total;
  return Incomplete{std::move(unresolved), std::move(total)};
}

DerivedTable gottlieb_table_of_map_space(const SpaceExpr& x, const std::string& y, Degree lo, Degree hi,
                                         const ProfileDatabase& db) {
  if (lo < 1 || hi < lo) throw DomainError("degree range must satisfy 1 <= lo <= hi");
  const auto& target = db.space(y);
  const auto declared = db.declared_shifts();
  // Fails fast with NotSplittableError.
  (void)shift_polynomial(x, declared);

  DerivedTable out;
  out.table.set_zero_above(target.gottlieb.zero_above());
  const SpaceExpr mapping = SpaceExpr::map(x, parse(y));
  for (Degree d = lo; d <= hi; ++d) {
    if (target.gottlieb.zero_above() && d > *target.gottlieb.zero_above()) break;
    auto value = evaluate(decompose(mapping, d, declared), db);
    if (auto* g = std::get_if<AbelianGroup>(&value)) {
      out.table.set(d, std::move(*g));
    } else {
      for (auto& u : std::get<Incomplete>(value).unresolved) {
        out.unresolved.push_back("degree " + std::to_string(d) + ": " + u);
      }
    }
  }
  return out;
}

}  // namespace gottcalc

#include "momentbody/json_io.hpp"

#include <cctype>

namespace momentbody {

using nlohmann::json;

namespace {

json entries_json(const MomentVector& v) {
  json entries = json::array();
  if (v.mode() == Mode::exact) {
    for (const auto& q : v.exact_entries()) entries.push_back(format_rational(q));
  } else {
    for (double x : v.float_entries()) entries.push_back(x);
  }
  return entries;
}

bool looks_rational(const std::string& s) {
  bool digits = false, slash = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (c == '-' && i == 0) continue;
    if (c == '/' && !slash && digits) {
      slash = true;
      continue;
    }
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    digits = true;
  }
  return digits;
}

}  // namespace

json to_json(const MomentVector& v) {
  return json{{"mode", v.mode() == Mode::exact ? "exact" : "float"}, {"entries", entries_json(v)}};
}

json to_json(const CanonicalVector& v) {
  json entries = json::array();
  if (v.mode() == Mode::exact) {
    for (const auto& q : v.exact_entries()) entries.push_back(format_rational(q));
  } else {
    for (double x : v.float_entries()) entries.push_back(x);
  }
  return json{{"mode", v.mode() == Mode::exact ? "exact" : "float"}, {"entries", entries}};
}

json to_json(const DiscreteMeasure& mu) {
  json atoms = json::array();
  for (const auto& a : mu.atoms) atoms.push_back(json{{"x", a.x}, {"w", a.w}});
  return json{{"atoms", atoms}};
}

namespace {

template <class MakeExact, class MakeFloat>
auto vector_from_json(const json& j, MakeExact make_exact, MakeFloat make_float) {
  if (!j.contains("mode") || !j.contains("entries")) {
    throw InvalidArgument("vector JSON needs \"mode\" and \"entries\"");
  }
  const std::string mode = j.at("mode").get<std::string>();
  const json& entries = j.at("entries");
  if (mode == "exact") {
    std::vector<Rational> out;
    for (const auto& e : entries) out.push_back(parse_rational(e.get<std::string>()));
    return make_exact(std::move(out));
  }
  if (mode == "float") {
    std::vector<double> out;
    for (const auto& e : entries) {
      out.push_back(e.is_string() ? parse_double(e.get<std::string>()) : e.get<double>());
    }
    return make_float(std::move(out));
  }
  throw InvalidArgument("vector mode must be \"exact\" or \"float\"");
}

}  // namespace

MomentVector moment_vector_from_json(const json& j) {
  return vector_from_json(
      j, [](std::vector<Rational> e) { return MomentVector::exact(std::move(e)); },
      [](std::vector<double> e) { return MomentVector::floating(std::move(e)); });
}

CanonicalVector canonical_vector_from_json(const json& j) {
  return vector_from_json(
      j, [](std::vector<Rational> e) { return CanonicalVector::exact(std::move(e)); },
      [](std::vector<double> e) { return CanonicalVector::floating(std::move(e)); });
}

DiscreteMeasure discrete_measure_from_json(const json& j) {
  DiscreteMeasure mu;
  for (const auto& a : j.at("atoms")) {
    mu.atoms.push_back({a.at("x").get<double>(), a.at("w").get<double>()});
  }
  return mu;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur.push_back(c);
    }
  }
  if (!cur.empty() || !out.empty()) out.push_back(cur);
  for (const auto& s : out) {
    if (s.empty()) throw InvalidArgument("empty entry in scalar list");
  }
  return out;
}

Mode detect_mode(const std::vector<std::string>& literals) {
  bool all_rational = true;
  for (const auto& s : literals) {
    if (!looks_rational(s)) all_rational = false;
  }
  return all_rational ? Mode::exact : Mode::floating;
}

namespace {

template <class MakeExact, class MakeFloat>
auto parse_vector(const std::string& csv, std::optional<Mode> mode, MakeExact make_exact,
                  MakeFloat make_float) {
  const auto literals = split_list(csv);
  const Mode m = mode.value_or(detect_mode(literals));
  if (m == Mode::exact) {
    std::vector<Rational> out;
    out.reserve(literals.size());
    for (const auto& s : literals) out.push_back(parse_rational(s));
    return make_exact(std::move(out));
  }
  std::vector<double> out;
  out.reserve(literals.size());
  for (const auto& s : literals) out.push_back(parse_double(s));
  return make_float(std::move(out));
}

}  // namespace

MomentVector parse_moments(const std::string& csv, std::optional<Mode> mode) {
  return parse_vector(
      csv, mode, [](std::vector<Rational> e) { return MomentVector::exact(std::move(e)); },
      [](std::vector<double> e) { return MomentVector::floating(std::move(e)); });
}

CanonicalVector parse_canonical(const std::string& csv, std::optional<Mode> mode) {
  return parse_vector(
      csv, mode, [](std::vector<Rational> e) { return CanonicalVector::exact(std::move(e)); },
      [](std::vector<double> e) { return CanonicalVector::floating(std::move(e)); });
}

namespace {

template <class V>
std::string entries_string_impl(const V& v) {
  std::string out;
  for (std::size_t i = 1; i <= v.size(); ++i) {
    if (i > 1) out.push_back(',');
    out += v.entry(i).to_string();
  }
  return out;
}

}  // namespace

std::string entries_string(const MomentVector& v) { return entries_string_impl(v); }
std::string entries_string(const CanonicalVector& v) { return entries_string_impl(v); }

}  // namespace momentbody

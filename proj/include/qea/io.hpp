#pragma once

#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"
#include "qea/catalog.hpp"
#include "qea/report.hpp"
#include "qea/states.hpp"
#include "qea/tense.hpp"

namespace qea {

struct ParseError {
  std::string file;
  int line = 0;
  std::string message;

  std::string str() const {
    return file + ":" + std::to_string(line) + ": " + message;
  }
};

namespace detail {

inline std::string trim(std::string_view s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string_view::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(a, b - a + 1));
}

/// Split on a separator at paren depth zero, so tuple names like (0,1/2)
/// survive comma-separated lists.
inline std::vector<std::string> split_top(std::string_view s, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == sep && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  std::string last = trim(cur);
  if (!last.empty() || !out.empty()) out.push_back(last);
  while (!out.empty() && out.back().empty()) out.pop_back();
  return out;
}

struct Line {
  int number;
  std::string key, value;
};

inline std::vector<Line> keyed_lines(const std::string& text, const std::string& file,
                                     std::vector<ParseError>& errors) {
  std::vector<Line> out;
  std::istringstream in(text);
  std::string raw;
  int no = 0;
  while (std::getline(in, raw)) {
    ++no;
    if (auto h = raw.find('#'); h != std::string::npos) raw.resize(h);
    std::string line = trim(raw);
    if (line.empty()) continue;
    auto colon = line.find(':');
    if (colon == std::string::npos) {
      errors.push_back({file, no, "expected 'key: value'"});
      continue;
    }
    out.push_back({no, trim(line.substr(0, colon)), trim(line.substr(colon + 1))});
  }
  return out;
}

}  // namespace detail

/// Algebra text format: `elements:` comma list, `zero:`/`one:`, `sum:`
/// semicolon list of x+y=z entries (one per unordered pair suffices),
/// optional `q:`/`d:` comma lists of x->y. `#` starts a comment.
inline std::optional<RawAlgebra> parse_algebra_text(const std::string& text,
                                                    const std::string& file,
                                                    std::vector<ParseError>& errors) {
  RawAlgebra raw;
  bool saw_any = false;
  std::vector<std::pair<int, std::string>> referenced;  // line, element name
  for (const auto& ln : detail::keyed_lines(text, file, errors)) {
    saw_any = true;
    if (ln.key == "name") {
      raw.name = ln.value;
    } else if (ln.key == "elements") {
      for (auto& e : detail::split_top(ln.value, ',')) raw.elements.push_back(e);
    } else if (ln.key == "zero") {
      raw.zero = ln.value;
      referenced.push_back({ln.number, ln.value});
    } else if (ln.key == "one") {
      raw.one = ln.value;
      referenced.push_back({ln.number, ln.value});
    } else if (ln.key == "sum") {
      for (const auto& ent : detail::split_top(ln.value, ';')) {
        if (ent.empty()) continue;
        auto eq = ent.find('=');
        if (eq == std::string::npos) {
          errors.push_back({file, ln.number, "sum entry needs '=': " + ent});
          continue;
        }
        auto lhs = detail::split_top(ent.substr(0, eq), '+');
        if (lhs.size() != 2) {
          errors.push_back({file, ln.number, "sum entry needs x+y: " + ent});
          continue;
        }
        raw.sums.push_back({lhs[0], lhs[1], detail::trim(ent.substr(eq + 1))});
        for (const auto& part : raw.sums.back()) referenced.push_back({ln.number, part});
      }
    } else if (ln.key == "q" || ln.key == "d") {
      for (const auto& ent : detail::split_top(ln.value, ',')) {
        auto arrow = ent.find("->");
        if (arrow == std::string::npos) {
          errors.push_back({file, ln.number, ln.key + " entry needs '->': " + ent});
          continue;
        }
        auto& tgt = (ln.key == "q") ? raw.qmap : raw.dmap;
        tgt.push_back({detail::trim(ent.substr(0, arrow)), detail::trim(ent.substr(arrow + 2))});
        referenced.push_back({ln.number, tgt.back().first});
        referenced.push_back({ln.number, tgt.back().second});
      }
    } else {
      errors.push_back({file, ln.number, "unknown key '" + ln.key + "'"});
    }
  }
  if (!saw_any || raw.elements.empty()) {
    errors.push_back({file, 0, "no algebra defined"});
    return std::nullopt;
  }
  for (const auto& [line, name] : referenced) {
    if (std::find(raw.elements.begin(), raw.elements.end(), name) == raw.elements.end())
      errors.push_back({file, line, "unknown element reference '" + name + "'"});
  }
  return raw;
}

inline std::string serialize_algebra(const RawAlgebra& raw) {
  std::ostringstream os;
  if (!raw.name.empty()) os << "name: " << raw.name << "\n";
  os << "elements: ";
  for (size_t i = 0; i < raw.elements.size(); ++i)
    os << (i ? ", " : "") << raw.elements[i];
  os << "\nzero: " << raw.zero << "\none: " << raw.one << "\n";
  for (size_t i = 0; i < raw.sums.size(); ++i) {
    os << (i % 8 == 0 ? (i ? "\nsum: " : "sum: ") : "; ");
    os << raw.sums[i][0] << "+" << raw.sums[i][1] << "=" << raw.sums[i][2];
  }
  if (!raw.sums.empty()) os << "\n";
  auto dump_map = [&](const char* key, const std::vector<std::pair<std::string, std::string>>& m) {
    if (m.empty()) return;
    os << key << ": ";
    for (size_t i = 0; i < m.size(); ++i)
      os << (i ? ", " : "") << m[i].first << "->" << m[i].second;
    os << "\n";
  };
  dump_map("q", raw.qmap);
  dump_map("d", raw.dmap);
  return os.str();
}

/// Frame format: `S:` comma list, optional `T:` (omitted for time frames),
/// `R:` comma/semicolon list of pairs s~t.
inline std::optional<Frame> parse_frame_text(const std::string& text, const std::string& file,
                                             std::vector<ParseError>& errors) {
  Frame f;
  std::vector<std::tuple<int, std::string, std::string>> rel;
  for (const auto& ln : detail::keyed_lines(text, file, errors)) {
    if (ln.key == "S")
      f.S = detail::split_top(ln.value, ',');
    else if (ln.key == "T")
      f.T = detail::split_top(ln.value, ',');
    else if (ln.key == "R") {
      for (const auto& ent : detail::split_top(ln.value, ',')) {
        if (ent.empty()) continue;
        auto tilde = ent.find('~');
        if (tilde == std::string::npos) {
          errors.push_back({file, ln.number, "relation entry needs '~': " + ent});
          continue;
        }
        rel.emplace_back(ln.number, detail::trim(ent.substr(0, tilde)),
                         detail::trim(ent.substr(tilde + 1)));
      }
    } else if (ln.key != "name") {
      errors.push_back({file, ln.number, "unknown key '" + ln.key + "'"});
    }
  }
  if (f.S.empty()) {
    errors.push_back({file, 0, "frame needs a non-void S"});
    return std::nullopt;
  }
  if (f.T.empty()) f.T = f.S;
  f.R = BitMatrix(static_cast<int>(f.S.size()), static_cast<int>(f.T.size()));
  auto idx = [](const std::vector<std::string>& v, const std::string& s) {
    for (size_t i = 0; i < v.size(); ++i)
      if (v[i] == s) return static_cast<int>(i);
    return -1;
  };
  for (const auto& [line, s, t] : rel) {
    int i = idx(f.S, s), j = idx(f.T, t);
    if (i < 0 || j < 0) {
      errors.push_back({file, line, "relation references unknown index: " + s + "~" + t});
      continue;
    }
    f.R.set(i, j);
  }
  return f;
}

inline std::string serialize_frame(const Frame& f) {
  std::ostringstream os;
  os << "S: ";
  for (size_t i = 0; i < f.S.size(); ++i) os << (i ? ", " : "") << f.S[i];
  os << "\n";
  if (!f.is_time_frame()) {
    os << "T: ";
    for (size_t i = 0; i < f.T.size(); ++i) os << (i ? ", " : "") << f.T[i];
    os << "\n";
  }
  os << "R: ";
  bool first = true;
  for (size_t i = 0; i < f.S.size(); ++i)
    for (size_t j = 0; j < f.T.size(); ++j)
      if (f.R.get(static_cast<int>(i), static_cast<int>(j))) {
        if (!first) os << ", ";
        os << f.S[i] << "~" << f.T[j];
        first = false;
      }
  os << "\n";
  return os.str();
}

/// Map files carry named x->y tables: `G: x->y, ...` / `H:` / `f:` / `g:`.
using NamedMaps = std::map<std::string, std::vector<std::pair<std::string, std::string>>>;

inline NamedMaps parse_maps_text(const std::string& text, const std::string& file,
                                 std::vector<ParseError>& errors) {
  NamedMaps out;
  for (const auto& ln : detail::keyed_lines(text, file, errors)) {
    for (const auto& ent : detail::split_top(ln.value, ',')) {
      auto arrow = ent.find("->");
      if (arrow == std::string::npos) {
        errors.push_back({file, ln.number, "map entry needs '->': " + ent});
        continue;
      }
      out[ln.key].push_back(
          {detail::trim(ent.substr(0, arrow)), detail::trim(ent.substr(arrow + 2))});
    }
  }
  return out;
}

inline std::optional<std::vector<int>> resolve_map(const FiniteEffectAlgebra& src,
                                                   const FiniteEffectAlgebra& dst,
                                                   const std::vector<std::pair<std::string, std::string>>& entries,
                                                   std::string& why) {
  std::vector<int> f(src.n, -1);
  for (const auto& [xs, ys] : entries) {
    int x = src.index_of(xs), y = dst.index_of(ys);
    if (x < 0 || y < 0) {
      why = "unknown element in entry " + xs + "->" + ys;
      return std::nullopt;
    }
    f[x] = y;
  }
  for (int x = 0; x < src.n; ++x)
    if (f[x] < 0) {
      why = "map not total: missing " + src.elements[x];
      return std::nullopt;
    }
  return f;
}

/// State table: one row per state, `name: element=p/q, ...`.
using RawStateTable = std::vector<std::pair<std::string, std::vector<std::pair<std::string, std::string>>>>;

inline RawStateTable parse_states_text(const std::string& text, const std::string& file,
                                       std::vector<ParseError>& errors) {
  RawStateTable out;
  for (const auto& ln : detail::keyed_lines(text, file, errors)) {
    std::vector<std::pair<std::string, std::string>> row;
    for (const auto& ent : detail::split_top(ln.value, ',')) {
      auto eq = ent.find('=');
      if (eq == std::string::npos) {
        errors.push_back({file, ln.number, "state entry needs '=': " + ent});
        continue;
      }
      row.push_back({detail::trim(ent.substr(0, eq)), detail::trim(ent.substr(eq + 1))});
    }
    out.push_back({ln.key, std::move(row)});
  }
  return out;
}

inline std::optional<StateVector> resolve_state(const FiniteEffectAlgebra& a,
                                                const std::vector<std::pair<std::string, std::string>>& row,
                                                std::string& why) {
  std::vector<std::optional<UnitRational>> vals(a.n);
  for (const auto& [el, vs] : row) {
    int x = a.index_of(el);
    if (x < 0) {
      why = "unknown element '" + el + "'";
      return std::nullopt;
    }
    auto v = UnitRational::parse(vs);
    if (!v) {
      why = "malformed rational '" + vs + "'";
      return std::nullopt;
    }
    vals[x] = *v;
  }
  StateVector s;
  s.values.reserve(a.n);
  for (int x = 0; x < a.n; ++x) {
    if (!vals[x]) {
      why = "state not total: missing " + a.elements[x];
      return std::nullopt;
    }
    s.values.push_back(*vals[x]);
  }
  return s;
}

inline std::string serialize_states(const FiniteEffectAlgebra& a, const StateSet& set) {
  // Columns in lexicographic element order for diff-stable output.
  std::vector<int> order(a.n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int x, int y) { return a.elements[x] < a.elements[y]; });
  std::ostringstream os;
  for (size_t i = 0; i < set.members.size(); ++i) {
    os << "s" << i << ": ";
    for (size_t k = 0; k < order.size(); ++k) {
      if (k) os << ", ";
      os << a.elements[order[k]] << "=" << set.members[i].at(order[k]).str();
    }
    os << "\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Workspace

struct WorkspaceDocument {
  std::map<std::string, RawAlgebra> algebras;
  std::map<std::string, Frame> frames;
  std::map<std::string, NamedMaps> maps;
  std::map<std::string, RawStateTable> states;
  std::vector<ParseError> errors;

  bool ok() const { return errors.empty(); }
};

inline std::string file_stem(const std::string& path) {
  auto slash = path.find_last_of('/');
  std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
  auto dot = base.find_last_of('.');
  return dot == std::string::npos ? base : base.substr(0, dot);
}

/// Reads .alg/.frame/.map/.states files into one resolved document; parse
/// problems are collected with file and line, duplicate names are errors.
inline WorkspaceDocument parse_workspace(const std::vector<std::string>& paths) {
  WorkspaceDocument doc;
  for (const auto& path : paths) {
    std::ifstream in(path);
    if (!in) {
      doc.errors.push_back({path, 0, "cannot open file"});
      continue;
    }
    std::stringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();
    std::string stem = file_stem(path);
    auto ext_pos = path.find_last_of('.');
    std::string ext = ext_pos == std::string::npos ? "" : path.substr(ext_pos);
    if (ext == ".alg") {
      auto raw = parse_algebra_text(text, path, doc.errors);
      if (raw) {
        std::string name = raw->name.empty() ? stem : raw->name;
        raw->name = name;
        if (!doc.algebras.emplace(name, *raw).second)
          doc.errors.push_back({path, 0, "duplicate algebra name '" + name + "'"});
      }
    } else if (ext == ".frame") {
      auto fr = parse_frame_text(text, path, doc.errors);
      if (fr && !doc.frames.emplace(stem, *fr).second)
        doc.errors.push_back({path, 0, "duplicate frame name '" + stem + "'"});
    } else if (ext == ".map") {
      auto m = parse_maps_text(text, path, doc.errors);
      if (!doc.maps.emplace(stem, std::move(m)).second)
        doc.errors.push_back({path, 0, "duplicate map file name '" + stem + "'"});
    } else if (ext == ".states") {
      auto st = parse_states_text(text, path, doc.errors);
      if (!doc.states.emplace(stem, std::move(st)).second)
        doc.errors.push_back({path, 0, "duplicate state table name '" + stem + "'"});
    } else {
      doc.errors.push_back({path, 0, "unknown file extension '" + ext + "'"});
    }
  }
  return doc;
}

// ---------------------------------------------------------------------------
// Machine-readable reports

inline nlohmann::json report_to_json(const VerificationReport& rep) {
  nlohmann::json j;
  j["subject"] = rep.subject;
  j["verdict"] = verdict_name(rep.verdict);
  j["millis"] = rep.millis;
  j["certificates"] = nlohmann::json::array();
  for (const auto& l : rep.lines)
    j["certificates"].push_back({{"name", l.name}, {"ok", l.ok}, {"detail", l.detail}});
  j["witnesses"] = rep.witnesses;
  return j;
}

inline nlohmann::json states_to_json(const FiniteEffectAlgebra& a, const StateSet& set) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& s : set.members) {
    nlohmann::json row;
    for (int x = 0; x < a.n; ++x) row[a.elements[x]] = s.at(x).str();
    j.push_back(row);
  }
  return j;
}

inline nlohmann::json frame_to_json(const Frame& f) {
  nlohmann::json j;
  j["S"] = f.S;
  j["T"] = f.T;
  auto rel = nlohmann::json::array();
  for (size_t i = 0; i < f.S.size(); ++i)
    for (size_t k = 0; k < f.T.size(); ++k)
      if (f.R.get(static_cast<int>(i), static_cast<int>(k)))
        rel.push_back({f.S[i], f.T[k]});
  j["R"] = rel;
  return j;
}

}  // namespace qea

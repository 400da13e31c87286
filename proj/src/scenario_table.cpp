#include <algorithm>
#include <sstream>

#include "scenario_internal.hpp"

namespace dk {

namespace {

std::string scalar(Json v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

// Left-aligned columns separated by two spaces.
std::string render(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& r : rows)
    for (std::size_t c = 0; c < r.size(); ++c) {
      if (width.size() <= c) width.push_back(0);
      width[c] = std::max(width[c], r[c].size());
    }
  std::ostringstream out;
  for (const auto& r : rows) {
    std::string line;
    for (std::size_t c = 0; c < r.size(); ++c) {
      line += r[c];
      if (c + 1 < r.size()) line += std::string(width[c] - r[c].size() + 2, ' ');
    }
    out << "  " << line << '\n';
  }
  return out.str();
}

std::string ti_table(Json ti) {
  int lo = ti["degrees"][0], hi = ti["degrees"][1];
  std::vector<std::vector<std::string>> rows{{"i"}};
  for (int i = lo; i <= hi; ++i) rows[0].push_back(std::to_string(i));
  for (auto [field, label] : std::vector<std::pair<std::string, std::string>>{
           {"triple", "T(X,F,s)"}, {"pair", "T(X,F)"}, {"ext", "Ext(F,F)"}, {"sheaf", "H(F)"}, {"k", "H(K)"},
           {"theta", "H(Theta)"}}) {
    std::vector<std::string> r{label};
    for (auto v : ti[field]) r.push_back(v.dump());
    rows.push_back(r);
  }
  return render(rows) + "  window " + ti["window"].dump() + '\n';
}

std::string sequence_table(Json s) {
  std::vector<std::vector<std::string>> rows{{"node", "dim", "rank out"}};
  Json nodes = s["nodes"];
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    std::string out = k < s["ranks"].size() ? s["ranks"][k].dump() : s["rank_out"].dump();
    rows.push_back({nodes[k]["label"].get<std::string>(), nodes[k]["dim"].dump(), out});
  }
  return "  " + s["name"].get<std::string>() + (s["exact"].get<bool>() ? "  exact" : "  NOT exact") + '\n' +
         render(rows);
}

std::string fields_table(Json r) {
  std::vector<std::vector<std::string>> rows;
  for (auto [key, value] : r.items()) {
    if (value.is_array() && std::all_of(value.begin(), value.end(), [](Json x) { return x.is_string(); })) {
      for (std::size_t i = 0; i < value.size(); ++i) rows.push_back({i == 0 ? key : "", value[i].get<std::string>()});
      if (value.empty()) rows.push_back({key, "-"});
    } else {
      rows.push_back({key, scalar(value)});
    }
  }
  return render(rows);
}

}  // namespace

// Works on a copy so missing keys read as null and fail with a type error.
std::string report_table(const Json& in) {
  Json report = in;
  std::ostringstream out;
  Json sc = report["scenario"];
  out << report["tool"].get<std::string>() << ' ' << report["version"].get<std::string>() << "  kind "
      << sc["kind"].get<std::string>();
  if (sc.contains("name")) out << "  name " << sc["name"].get<std::string>();
  out << "\nscenario " << report["scenario_hash"].get<std::string>() << '\n';
  Json results = report["results"];
  for (auto task : sc["tasks"]) {
    const std::string t = task;
    out << "\n[" << t << "]\n";
    Json r = results[t];
    if (t == "ti") {
      out << ti_table(r);
    } else if (t == "les") {
      for (auto s : report["certificates"]["sequences"]) out << sequence_table(s);
    } else if (t == "lift") {
      for (auto st : r["steps"])
        out << "  order " << st["order"].dump() << (st["lifted"].get<bool>() ? "  lifted" : "  obstructed") << '\n';
      out << "  unobstructed " << r["unobstructed"].dump() << '\n';
    } else if (t == "axioms") {
      out << "  pass " << r["pass"].dump() << '\n';
      for (auto v : r["violations"]) out << "  " << v["identity"].get<std::string>() << ' ' << v["witness"].dump() << '\n';
    } else if (t == "cohomology") {
      std::vector<std::vector<std::string>> rows{{"n"}, {"dim H^n"}};
      for (std::size_t k = 0; k < r["degrees"].size(); ++k) {
        rows[0].push_back(r["degrees"][k].dump());
        rows[1].push_back(r["dims"][k].dump());
      }
      out << render(rows);
    } else {
      Json flat = r;
      if (flat.contains("stabilization")) flat["stabilization"] = flat["stabilization"]["window"];
      out << fields_table(flat);
    }
  }
  return out.str();
}

}  // namespace dk

#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "tksub/params.hpp"

namespace tksub {

using json = nlohmann::json;

// One pipeline stage: which rule it instantiates, the parameters it resolved,
// the set sizes it produced, what it discarded and how it ended.
struct StageNote {
  std::string stage;
  std::string lemma;  // short slug for the rule applied, e.g. "expander-extraction"
  json params = json::object();
  json sizes = json::object();
  json discards = json::object();
  std::string outcome;

  json to_json() const {
    return json{{"stage", stage},   {"lemma", lemma},       {"params", params},
                {"sizes", sizes},   {"discards", discards}, {"outcome", outcome}};
  }
};

struct RunReport {
  std::string mode;
  std::vector<StageNote> stages;
  json overrides = json::object();

  void add(StageNote note) { stages.push_back(std::move(note)); }

  json to_json() const {
    json arr = json::array();
    for (const auto& s : stages) arr.push_back(s.to_json());
    return json{{"mode", mode}, {"overrides", overrides}, {"stages", arr}};
  }

  static json overrides_json(const ParamSet& ps) {
    json o = json::object();
    for (const auto& [k, v] : ps.overrides) o[k] = v;
    return o;
  }
};

}  // namespace tksub

// wire formats: JSON parsing for models, covers and towers, and
// stable-key JSON / plain-table rendering for every report type.  all
// documents carry "schema": "ellsurf/1".

#ifndef ELLSURF_IO_HPP
#define ELLSURF_IO_HPP

#include "ellsurf/basechange.hpp"
#include "ellsurf/conicbundle.hpp"
#include "ellsurf/mwrank.hpp"

#include <optional>
#include <string>

namespace ellsurf {

// surfaces arrive as {"a1": [...], ..., "a6": [...]}; each coefficient
// is an array of rationals ("p/q" strings or plain integers), constant
// term first; absent keys mean zero
WeierstrassModel parse_model_json(const std::string& text);

// {"branch1": "inf" | rational, "branch2": ..., "lambda": rational}
QuadraticCover parse_cover_json(const std::string& text);

// {"covers": [cover, ...]}
CoverTower parse_tower_json(const std::string& text);

// {"surface": model, "cover": cover}
struct SurfaceWithCover {
  WeierstrassModel model;
  QuadraticCover cover;
};
SurfaceWithCover parse_surface_cover_json(const std::string& text);

std::string render_model_json(const WeierstrassModel& m);

std::string render_report_json(const SurfaceReport& r);
std::string render_report_table(const SurfaceReport& r);

std::string render_rnrf_json(const RnrfReport& r);
std::string render_rnrf_table(const RnrfReport& r);

std::string render_basechange_json(const BaseChangeCheck& c);
std::string render_basechange_table(const BaseChangeCheck& c);

struct TowerGenusResult {
  int cover_count = 0;
  int genus = 0;
  std::optional<int> obstruction;  // from one further marked double cover
};
std::string render_tower_json(const TowerGenusResult& r);
std::string render_tower_table(const TowerGenusResult& r);

std::string render_jump_json(const JumpReport& r);
std::string render_jump_table(const JumpReport& r);

}  // namespace ellsurf

#endif

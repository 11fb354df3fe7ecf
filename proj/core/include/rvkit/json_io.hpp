#pragma once

#include <json.hpp>

#include "rvkit/newton.hpp"
#include "rvkit/pullback.hpp"
#include "rvkit/sections.hpp"

namespace rvkit {

using Json = nlohmann::ordered_json;

Json to_json(const GammaValue& g);
Json to_json(const RvElem& t);
Json to_json(const Ball& b);
Json to_json(const SwissCheese& s);
Json to_json(const DefinableSet1& d);
Json to_json(const NewtonPolygon& np);
Json to_json(const RootClasses& rc);
Json to_json(const SpecialBijection& t);
Json to_json(const RvPullbackCert& c);
Json to_json(const PullbackResult& r);
Json to_json(const std::vector<PreimagePiece>& pieces);
Json to_json(const B1Witness& w);
Json to_json(const B3Witness& w);
Json to_json(const RvCode& c);
Json to_json(const ContrastReport& r);
Json to_json(const LocalCMin& l);

// ball/cheese parsing per the documented schema
Ball ball_from_json(const FieldPtr& f, const Json& j);
SwissCheese cheese_from_json(const FieldPtr& f, const Json& j);

}  // namespace rvkit

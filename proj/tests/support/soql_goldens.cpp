// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The odcb Authors

#include "support/soql_goldens.hpp"

namespace odcb::testing {

namespace {

constexpr const char* kBase = "https://analisi.transparenciacatalunya.cat/resource/uy6k-2s8r.json";

PropertyPath aq(const char* property) { return {"AirQualityData", property}; }

Filter text_filter(const char* property, Operator op, const char* text) {
  return {aq(property), op, value::Text{text}, FilterScope::Server};
}

QuerySpec base_spec() {
  QuerySpec s;
  s.concept_name = "AirQualityData";
  s.select = {aq("municipality"), aq("magnitude")};
  return s;
}

}  // namespace

std::vector<SoqlGolden> soql_goldens() {
  using namespace std::chrono;
  std::vector<SoqlGolden> out;

  {
    auto s = base_spec();
    s.filters = {text_filter("municipality", Operator::Equals, "Barcelona")};
    out.push_back({"equality on text", s, 0,
                   std::string(kBase) +
                       "?$select=municipality,magnitude&$where=municipality%20%3D%20%27Barcelona%27&$limit=10&$offset=0"});
  }
  {
    QuerySpec s;
    s.concept_name = "AirQualityData";
    out.push_back({"empty spec", s, 0, std::string(kBase) + "?$limit=10&$offset=0"});
  }
  {
    auto s = base_spec();
    s.filters = {{aq("date"), Operator::Equals, value::Date{year{2020} / 6 / 15}, FilterScope::Server}};
    out.push_back({"date equality", s, 0,
                   std::string(kBase) +
                       "?$select=municipality,magnitude&$where=date%20%3D%20%272020-06-15T00%3A00%3A00.000%27"
                       "&$limit=10&$offset=0"});
  }
  {
    auto s = base_spec();
    s.filters = {{aq("magnitude"), Operator::LessThan, value::Number{14}, FilterScope::Server}};
    out.push_back({"number less than, third page", s, 2,
                   std::string(kBase) + "?$select=municipality,magnitude&$where=magnitude%20%3C%2014&$limit=10&$offset=20"});
  }
  {
    auto s = base_spec();
    s.filters = {text_filter("municipality", Operator::Equals, "Girona"),
                 {aq("magnitude"), Operator::GreaterThan, value::Number{2.5}, FilterScope::Server}};
    out.push_back({"conjunction", s, 0,
                   std::string(kBase) +
                       "?$select=municipality,magnitude&$where=municipality%20%3D%20%27Girona%27%20AND%20magnitude"
                       "%20%3E%202.5&$limit=10&$offset=0"});
  }
  {
    QuerySpec s;
    s.concept_name = "AirQualityData";
    s.select = {aq("station_name")};
    s.filters = {text_filter("station_name", Operator::Contains, "Eixample")};
    out.push_back({"contains", s, 0,
                   std::string(kBase) + "?$select=station_name&$where=contains(station_name,%27Eixample%27)&$limit=10&$offset=0"});
  }
  {
    auto s = base_spec();
    s.filters = {text_filter("pollutant", Operator::NotEquals, "NO2")};
    out.push_back({"not equals", s, 0,
                   std::string(kBase) +
                       "?$select=municipality,magnitude&$where=pollutant%20%21%3D%20%27NO2%27&$limit=10&$offset=0"});
  }
  {
    auto s = base_spec();
    s.sort = SortSpec{aq("station_name"), SortDirection::Desc};
    s.pageSize = 5;
    out.push_back({"sort, custom page size", s, 1,
                   std::string(kBase) + "?$select=municipality,magnitude&$order=station_name%20DESC&$limit=5&$offset=5"});
  }
  {
    auto s = base_spec();
    s.sort = SortSpec{aq("date"), SortDirection::Asc};
    s.aggregation = Aggregation{AggFunction::Average, aq("magnitude")};
    s.filters = {text_filter("municipality", Operator::Equals, "Barcelona")};
    out.push_back({"aggregation drops the order", s, 0,
                   std::string(kBase) +
                       "?$select=avg(magnitude)&$where=municipality%20%3D%20%27Barcelona%27&$limit=10&$offset=0"});
  }
  {
    auto s = base_spec();
    s.filters = {text_filter("municipality", Operator::Equals, "L'Hospitalet de Llobregat"),
                 text_filter("county_name", Operator::Equals, "Barcelon\xC3\xA8s")};
    out.push_back({"quote doubling and UTF-8", s, 0,
                   std::string(kBase) +
                       "?$select=municipality,magnitude&$where=municipality%20%3D%20%27L%27%27Hospitalet%20de%20"
                       "Llobregat%27%20AND%20county_name%20%3D%20%27Barcelon%C3%A8s%27&$limit=10&$offset=0"});
  }
  return out;
}

}  // namespace odcb::testing

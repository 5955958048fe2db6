// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The odcb Authors

#include "odcb/importers/importers.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "odcb/error.hpp"
#include "odcb/model/text.hpp"
#include "odcb/model/validate.hpp"
#include "odcb/refine/refine.hpp"

namespace odcb {

using json = nlohmann::ordered_json;

namespace {

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorCode::MalformedDescriptor, what); }

struct Column {
  std::string fieldName;
  std::string sourceType;
};

// Builds a one-concept model from a column list. Property names are the
// field names made into identifiers; clashes get a numeric suffix.
DataModel build_model(const std::string& title, ApiType api, const std::string& host, const std::string& resource,
                      const std::vector<Column>& columns) {
  if (!text::is_hostname(host)) malformed("'" + host + "' is not a valid host");
  if (resource.empty()) malformed("resource id is empty");
  if (columns.empty()) throw Error(ErrorCode::EmptyDataset, "dataset '" + resource + "' lists no columns");

  ConceptClass core;
  core.name = text::title_case_identifier(title);
  core.core = true;
  std::set<std::string> used;
  for (auto& col : columns) {
    PropertyDef p;
    std::string base = text::to_identifier(col.fieldName);
    p.name = base;
    for (int n = 2; !used.insert(p.name).second; ++n) p.name = base + "_" + std::to_string(n);
    p.semanticType = map_source_type(api, col.sourceType).type;
    p.binding = {col.fieldName, col.sourceType};
    core.properties.push_back(std::move(p));
  }

  DataModel model;
  model.name = core.name;
  model.binding = {api, host, resource};
  model.concepts.push_back(std::move(core));
  model = apply_default_annotations(model);

  auto report = validate(model);
  if (!report.empty()) malformed("imported model does not validate:\n" + report.describe());
  return model;
}

std::string string_field(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_string()) malformed(where + ": missing string '" + key + "'");
  return it->get<std::string>();
}

const json& socrata_columns(const json& views) {
  const json* view = &views;
  if (views.is_array()) {
    if (views.empty()) malformed("views document is an empty array");
    view = &views.front();
  }
  if (!view->is_object()) malformed("views document is not an object");
  auto it = view->find("columns");
  if (it == view->end() || !it->is_array()) malformed("views document has no columns array");
  return *it;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::MalformedDescriptor, "cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  json doc = json::parse(buf.str(), nullptr, false);
  if (doc.is_discarded()) throw Error(ErrorCode::MalformedDescriptor, path.string() + " is not valid JSON");
  return doc;
}

const json& required_doc(const SourceDocuments& docs, const std::string& role) {
  auto it = docs.documents.find(role);
  if (it == docs.documents.end()) malformed("missing '" + role + "' document");
  return it->second;
}

}  // namespace

DataModel import_socrata(const SocrataDescriptor& d) {
  if (!d.metadataDoc.is_object()) malformed("metadata document is not an object");
  const std::string title = string_field(d.metadataDoc, "name", "metadata");
  if (text::trim(title).empty()) malformed("metadata name is empty");

  std::vector<Column> columns;
  const auto& cols = socrata_columns(d.viewsDoc);
  for (size_t i = 0; i < cols.size(); ++i) {
    const std::string where = "views column " + std::to_string(i);
    if (!cols[i].is_object()) malformed(where + " is not an object");
    Column c{string_field(cols[i], "fieldName", where), string_field(cols[i], "dataTypeName", where)};
    if (c.fieldName.empty()) malformed(where + " has an empty fieldName");
    columns.push_back(std::move(c));
  }
  return build_model(title, ApiType::Socrata, d.domain, d.datasetId, columns);
}

DataModel import_ckan(const CkanDescriptor& d) {
  if (!d.resourceDoc.is_object()) malformed("datastore_search document is not an object");
  const json* holder = &d.resourceDoc;
  if (auto it = d.resourceDoc.find("result"); it != d.resourceDoc.end()) holder = &*it;
  auto fields = holder->find("fields");
  if (fields == holder->end() || !fields->is_array()) malformed("datastore_search document has no fields array");

  std::vector<Column> columns;
  for (size_t i = 0; i < fields->size(); ++i) {
    const auto& f = (*fields)[i];
    const std::string where = "field " + std::to_string(i);
    if (!f.is_object()) malformed(where + " is not an object");
    Column c{string_field(f, "id", where), string_field(f, "type", where)};
    if (c.fieldName.empty()) malformed(where + " has an empty id");
    columns.push_back(std::move(c));
  }
  const std::string title = d.title && !text::trim(*d.title).empty() ? *d.title : "Resource";
  return build_model(title, ApiType::CKAN, d.baseUrl, d.resourceId, columns);
}

std::vector<SourceDocumentRef> source_documents(ApiType api, const std::string& host, const std::string& id) {
  switch (api) {
    case ApiType::Socrata:
      return {
          {"metadata", "https://" + host + "/api/views/metadata/v1/" + id + ".json", "metadata.json", false},
          {"views", "https://" + host + "/api/views.json?id=" + id, "views.json", false},
      };
    case ApiType::CKAN:
      return {
          {"metadata", "https://" + host + "/api/3/action/resource_show?id=" + id, "metadata.json", true},
          {"datastore_search", "https://" + host + "/api/3/action/datastore_search?resource_id=" + id + "&limit=0",
           "datastore_search.json", false},
      };
    default:
      throw Error(ErrorCode::UnsupportedDialect, "no importer for " + std::string(to_string(api)));
  }
}

std::filesystem::path fixture_directory(ApiType api, const std::filesystem::path& root, const std::string& id) {
  return root / (api == ApiType::CKAN ? "ckan" : api == ApiType::Socrata ? "socrata" : text::to_lower(to_string(api))) / id;
}

SourceDocuments read_fixture_documents(ApiType api, const std::filesystem::path& root, const std::string& host,
                                       const std::string& id) {
  SourceDocuments docs{host, id, {}};
  const auto dir = fixture_directory(api, root, id);
  for (auto& ref : source_documents(api, host, id)) {
    const auto path = dir / ref.fixtureFile;
    if (ref.optional && !std::filesystem::exists(path)) continue;
    docs.documents[ref.role] = read_json_file(path);
  }
  return docs;
}

ImporterRegistry ImporterRegistry::with_builtins() {
  ImporterRegistry r;
  r.add(ApiType::Socrata, [](const SourceDocuments& docs) {
    return import_socrata({required_doc(docs, "metadata"), required_doc(docs, "views"), docs.host, docs.resourceId});
  });
  r.add(ApiType::CKAN, [](const SourceDocuments& docs) {
    CkanDescriptor d{required_doc(docs, "datastore_search"), docs.host, docs.resourceId, std::nullopt};
    if (auto it = docs.documents.find("metadata"); it != docs.documents.end()) {
      const json& meta = it->second.contains("result") ? it->second["result"] : it->second;
      if (meta.is_object() && meta.contains("name") && meta["name"].is_string()) d.title = meta["name"].get<std::string>();
    }
    return import_ckan(d);
  });
  return r;
}

void ImporterRegistry::add(ApiType api, ImporterFn importer) { importers_[api] = std::move(importer); }

bool ImporterRegistry::supports(ApiType api) const { return importers_.count(api) != 0; }

DataModel ImporterRegistry::run(ApiType api, const SourceDocuments& docs) const {
  auto it = importers_.find(api);
  if (it == importers_.end())
    throw Error(ErrorCode::UnsupportedDialect, "no importer registered for " + std::string(to_string(api)));
  return it->second(docs);
}

}  // namespace odcb

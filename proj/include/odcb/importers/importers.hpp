// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The odcb Authors

#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "odcb/model/data_model.hpp"
#include "odcb/model/source_types.hpp"

namespace odcb {

/// Socrata dataset description: the metadata API document (title,
/// description) and the Views API document (columns with fieldName and
/// dataTypeName).
struct SocrataDescriptor {
  nlohmann::ordered_json metadataDoc;
  nlohmann::ordered_json viewsDoc;
  std::string domain;
  std::string datasetId;
};

/// CKAN DataStore resource: a datastore_search response carrying the
/// fields array. The title comes from resource_show when available.
struct CkanDescriptor {
  nlohmann::ordered_json resourceDoc;
  std::string baseUrl;
  std::string resourceId;
  std::optional<std::string> title;
};

DataModel import_socrata(const SocrataDescriptor& descriptor);
DataModel import_ckan(const CkanDescriptor& descriptor);

/// Raw documents of one API resource, keyed by role ("metadata", "views",
/// "datastore_search").
struct SourceDocuments {
  std::string host;
  std::string resourceId;
  std::map<std::string, nlohmann::ordered_json> documents;
};

/// Name and URL of every document an importer consumes, in fetch order.
/// Optional documents are flagged so a failed fetch can be skipped.
struct SourceDocumentRef {
  std::string role;
  std::string url;
  std::string fixtureFile;
  bool optional = false;
};

std::vector<SourceDocumentRef> source_documents(ApiType api, const std::string& host, const std::string& resource_id);

/// Reads the documents for `api` from `<root>/<socrata|ckan>/<resourceId>/`.
SourceDocuments read_fixture_documents(ApiType api, const std::filesystem::path& root, const std::string& host,
                                       const std::string& resource_id);

std::filesystem::path fixture_directory(ApiType api, const std::filesystem::path& root, const std::string& resource_id);

using ImporterFn = std::function<DataModel(const SourceDocuments&)>;

/// Importers keyed by API type. Socrata and CKAN are built in; OData and
/// Adhoc/OpenAPI have binding support but no importer until one is added.
class ImporterRegistry {
 public:
  static ImporterRegistry with_builtins();

  void add(ApiType api, ImporterFn importer);
  bool supports(ApiType api) const;
  // Throws Error(UnsupportedDialect) when no importer is registered.
  DataModel run(ApiType api, const SourceDocuments& docs) const;

 private:
  std::map<ApiType, ImporterFn> importers_;
};

}  // namespace odcb

// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The odcb Authors

// odcb: import an Open Data API, refine the model, generate a bot, then
// chat with it in a terminal or over HTTP.

#include <CLI11.hpp>

#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "odcb/botgen/generate.hpp"
#include "odcb/error.hpp"
#include "odcb/importers/importers.hpp"
#include "odcb/model/document.hpp"
#include "odcb/model/text.hpp"
#include "odcb/model/validate.hpp"
#include "odcb/refine/refine.hpp"
#include "odcb/runtime/engine.hpp"
#include "odcb/runtime/mock_api.hpp"
#include "odcb/service/chat_service.hpp"

namespace {

using odcb::Error;
using odcb::ErrorCode;
using json = nlohmann::ordered_json;

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kInvalid = 2;

// File system failures; reported with exit code 1.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

json read_json(const std::string& path) {
  auto doc = json::parse(read_file(path), nullptr, false);
  if (doc.is_discarded()) throw Error(ErrorCode::MalformedDocument, path + " is not valid JSON");
  return doc;
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw IoError("cannot write " + path);
}

odcb::ApiType parse_api(const std::string& name) {
  std::optional<odcb::ApiType> api;
  for (auto t : {odcb::ApiType::Socrata, odcb::ApiType::CKAN, odcb::ApiType::OData, odcb::ApiType::Adhoc})
    if (odcb::text::to_lower(odcb::to_string(t)) == odcb::text::to_lower(name)) api = t;
  if (!api) throw CLI::ValidationError("--api", "unknown API type " + name);
  return *api;
}

std::chrono::year_month_day parse_today(const std::string& text) {
  if (text.empty()) return odcb::utc_today();
  auto v = odcb::parse_value(odcb::SemanticType::DateTime, text, odcb::utc_today());
  return std::get<odcb::value::Date>(v).value;
}

odcb::DataModel load_model(const std::string& path) {
  auto model = odcb::restore(read_json(path));
  auto report = odcb::validate(model);
  if (!report.empty()) throw Error(ErrorCode::InvariantViolation, "invalid model " + path + "\n" + report.describe());
  return model;
}

// ---- import -------------------------------------------------------------

struct ImportArgs {
  std::string api, domain, dataset, from, out, apiOrigin;
};

int run_import(const ImportArgs& a) {
  const auto api = parse_api(a.api);
  odcb::SourceDocuments docs;
  if (!a.from.empty()) {
    docs = odcb::read_fixture_documents(api, a.from, a.domain, a.dataset);
  } else {
    odcb::HttpTransport http(a.apiOrigin.empty() ? std::nullopt : std::optional<std::string>(a.apiOrigin));
    docs = {a.domain, a.dataset, {}};
    for (auto& ref : odcb::source_documents(api, a.domain, a.dataset)) {
      try {
        docs.documents[ref.role] = http.get({"GET", ref.url});
      } catch (const Error& e) {
        if (!ref.optional) throw;
        std::cerr << "skipping " << ref.role << ": " << e.detail() << "\n";
      }
    }
  }
  auto model = odcb::ImporterRegistry::with_builtins().run(api, docs);
  write_output(a.out, odcb::persist_text(model));
  std::cerr << "imported " << model.name << ": " << odcb::all_leaves(model).size() << " properties\n";
  return kOk;
}

// ---- refine / generate ----------------------------------------------------

int run_refine(const std::string& model_path, const std::string& script_path, const std::string& out) {
  auto model = load_model(model_path);
  auto commands = odcb::parse_refinement_script(read_json(script_path));
  auto refined = odcb::apply_refinements(model, commands);
  write_output(out, odcb::persist_text(refined));
  return kOk;
}

int run_generate(const std::string& model_path, const std::string& out, const std::string& templates,
                 int page_size) {
  auto model = load_model(model_path);
  const odcb::TemplatePack pack =
      templates.empty() ? odcb::TemplatePack::defaults() : odcb::TemplatePack::from_json(read_json(templates));
  auto bot = odcb::generate_bot(model, pack, page_size);
  auto problems = odcb::check_bot(bot);
  if (!problems.empty()) {
    std::string all;
    for (auto& p : problems) all += "\n  " + p;
    throw Error(ErrorCode::InvariantViolation, "generated bot is inconsistent:" + all);
  }
  write_output(out, odcb::bot_to_json(bot).dump(2) + "\n");
  return kOk;
}

// ---- repl / serve ---------------------------------------------------------

struct ChatArgs {
  std::string bot, from, apiOrigin, today, host = "0.0.0.0", staticDir;
  int port = 8080;
};

struct Backend {
  std::unique_ptr<odcb::MockApi> mock;
  std::unique_ptr<odcb::Transport> transport;
};

Backend make_backend(const ChatArgs& a) {
  Backend b;
  if (!a.from.empty()) {
    b.mock = std::make_unique<odcb::MockApi>(a.from);
    b.transport = std::make_unique<odcb::MockTransport>(*b.mock);
  } else {
    b.transport = std::make_unique<odcb::HttpTransport>(a.apiOrigin.empty() ? std::nullopt
                                                                            : std::optional<std::string>(a.apiOrigin));
  }
  return b;
}

void print_response(const odcb::BotResponse& r) {
  for (auto& m : r.messages) std::cout << "bot> " << m << "\n";
  if (r.table) std::cout << odcb::format_table(*r.table);
  for (std::size_t i = 0; i < r.buttons.size(); ++i) std::cout << "  [" << i + 1 << "] " << r.buttons[i] << "\n";
  std::cout.flush();
}

int run_repl(const ChatArgs& a) {
  auto bot = odcb::bot_from_json(read_json(a.bot));
  auto backend = make_backend(a);
  odcb::ChatEngine engine(std::move(bot), *backend.transport, [](std::string_view) {});
  auto session = engine.create_session();
  auto last = engine.welcome(session);
  print_response(last);
  std::string line;
  while (std::cout << "you> " << std::flush, std::getline(std::cin, line)) {
    const std::string input = odcb::text::trim(line);
    if (input.empty()) continue;
    if (input == "quit" || input == "exit") break;
    std::string utterance = input;
    // A bare number picks the matching button.
    if (input.find_first_not_of("0123456789") == std::string::npos) {
      std::size_t n = std::stoul(input);
      if (n >= 1 && n <= last.buttons.size()) utterance = last.buttons[n - 1];
    }
    auto turn = engine.handle_message(session, utterance, parse_today(a.today));
    session = std::move(turn.session);
    last = std::move(turn.response);
    print_response(last);
  }
  return kOk;
}

odcb::ChatService* g_service = nullptr;

extern "C" void on_signal(int) {
  if (g_service) g_service->stop();
}

int run_serve(ChatArgs a) {
  if (const char* env = std::getenv("ODCB_PORT"); env && *env) {
    try {
      a.port = std::stoi(env);
    } catch (const std::exception&) {
      throw CLI::ValidationError("ODCB_PORT", std::string("not a port number: ") + env);
    }
  }
  auto bot = odcb::bot_from_json(read_json(a.bot));
  auto backend = make_backend(a);
  odcb::ChatEngine engine(std::move(bot), *backend.transport);
  odcb::ChatService::Options options;
  options.host = a.host;
  options.port = a.port;
  if (!a.staticDir.empty()) options.staticDir = a.staticDir;
  if (!a.today.empty()) {
    auto fixed = parse_today(a.today);
    options.today = [fixed] { return fixed; };
  }
  odcb::ChatService service(engine, options);
  const int port = service.bind();
  std::cerr << "chat service listening on " << a.host << ":" << port << "\n";
  g_service = &service;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  service.run();
  g_service = nullptr;
  return kOk;
}

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::Transport: return kUsage;
    default: return kInvalid;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Build and run chatbots over Open Data web APIs"};
  app.require_subcommand(1);

  ImportArgs imp;
  auto* import_cmd = app.add_subcommand("import", "Read an API's dataset description into a model JSON");
  import_cmd->add_option("--api", imp.api, "socrata or ckan")->required();
  import_cmd->add_option("--domain", imp.domain, "API host, e.g. analisi.transparenciacatalunya.cat")->required();
  import_cmd->add_option("--dataset", imp.dataset, "dataset or resource id")->required();
  import_cmd->add_option("--from", imp.from, "read recorded documents from this fixture directory");
  import_cmd->add_option("--api-origin", imp.apiOrigin, "send API requests to this origin instead");
  import_cmd->add_option("--out", imp.out, "output file (default stdout)");

  std::string model_path, script_path, out_path, templates;
  int page_size = odcb::kDefaultPageSize;
  auto* refine_cmd = app.add_subcommand("refine", "Apply a refinement script to a model");
  refine_cmd->add_option("--model", model_path, "model JSON")->required();
  refine_cmd->add_option("--script", script_path, "refinement script JSON")->required();
  refine_cmd->add_option("--out", out_path, "output file (default stdout)");

  auto* generate_cmd = app.add_subcommand("generate", "Generate a bot definition from a model");
  generate_cmd->add_option("--model", model_path, "model JSON")->required();
  generate_cmd->add_option("--out", out_path, "output file (default stdout)");
  generate_cmd->add_option("--templates", templates, "template pack JSON replacing the built-in phrasing");
  generate_cmd->add_option("--page-size", page_size, "rows per result page")->check(CLI::PositiveNumber);

  ChatArgs chat;
  auto add_chat_options = [&chat](CLI::App* cmd) {
    cmd->add_option("--bot", chat.bot, "bot JSON")->required();
    cmd->add_option("--from", chat.from, "answer API requests from this fixture directory");
    cmd->add_option("--api-origin", chat.apiOrigin, "send API requests to this origin instead");
    cmd->add_option("--today", chat.today, "date to resolve today/yesterday against (YYYY-MM-DD)");
  };
  auto* repl_cmd = app.add_subcommand("repl", "Chat with a bot in the terminal");
  add_chat_options(repl_cmd);
  auto* serve_cmd = app.add_subcommand("serve", "Serve the chat API over HTTP");
  add_chat_options(serve_cmd);
  serve_cmd->add_option("--port", chat.port, "listen port (ODCB_PORT overrides)");
  serve_cmd->add_option("--host", chat.host, "listen address");
  serve_cmd->add_option("--static", chat.staticDir, "serve files from this directory at /");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*import_cmd) return run_import(imp);
    if (*refine_cmd) return run_refine(model_path, script_path, out_path);
    if (*generate_cmd) return run_generate(model_path, out_path, templates, page_size);
    if (*repl_cmd) return run_repl(chat);
    if (*serve_cmd) return run_serve(chat);
  } catch (const CLI::Error& e) {
    std::cerr << "odcb: " << e.what() << "\n";
    return kUsage;
  } catch (const IoError& e) {
    std::cerr << "odcb: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "odcb: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "odcb: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

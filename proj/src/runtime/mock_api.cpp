// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The odcb Authors

#include "odcb/runtime/mock_api.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <memory>
#include <optional>

#include "odcb/error.hpp"
#include "odcb/model/text.hpp"
#include "odcb/runtime/render.hpp"

namespace odcb {

std::string percent_decode(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  auto hex = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
  };
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '%' && i + 2 < s.size() && hex(s[i + 1]) >= 0 && hex(s[i + 2]) >= 0) {
      out.push_back(static_cast<char>(hex(s[i + 1]) * 16 + hex(s[i + 2])));
      i += 2;
    } else if (s[i] == '+') {
      out.push_back(' ');
    } else {
      out.push_back(s[i]);
    }
  }
  return out;
}

std::vector<std::pair<std::string, std::string>> parse_query(std::string_view target) {
  std::vector<std::pair<std::string, std::string>> out;
  auto q = target.find('?');
  if (q == std::string_view::npos) return out;
  auto rest = target.substr(q + 1);
  while (!rest.empty()) {
    auto amp = rest.find('&');
    auto pair = rest.substr(0, amp);
    auto eq = pair.find('=');
    if (!pair.empty())
      out.emplace_back(percent_decode(pair.substr(0, eq)),
                       eq == std::string_view::npos ? std::string() : percent_decode(pair.substr(eq + 1)));
    if (amp == std::string_view::npos) break;
    rest = rest.substr(amp + 1);
  }
  return out;
}

namespace {

struct BadQuery : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::optional<double> as_number(const nlohmann::ordered_json& cell) {
  if (cell.is_number()) return cell.get<double>();
  if (!cell.is_string()) return std::nullopt;
  const auto& s = cell.get_ref<const std::string&>();
  double x = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), x);
  if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size()) return std::nullopt;
  return x;
}

std::string as_text(const nlohmann::ordered_json& cell) {
  if (cell.is_string()) return cell.get<std::string>();
  if (cell.is_number()) return format_number(cell.get<double>());
  if (cell.is_boolean()) return cell.get<bool>() ? "true" : "false";
  return cell.dump();
}

// ---- SoQL $where subset ---------------------------------------------------

struct Tok {
  enum Kind { Ident, String, Number, Op, LParen, RParen, Comma, End } kind = End;
  std::string text;
};

std::vector<Tok> lex(std::string_view s) {
  std::vector<Tok> out;
  size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '\'') {
      std::string lit;
      ++i;
      for (;;) {
        if (i >= s.size()) throw BadQuery("unterminated string literal");
        if (s[i] == '\'') {
          if (i + 1 < s.size() && s[i + 1] == '\'') {
            lit.push_back('\'');
            i += 2;
            continue;
          }
          ++i;
          break;
        }
        lit.push_back(s[i++]);
      }
      out.push_back({Tok::String, lit});
    } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '.') {
      size_t j = i + 1;
      while (j < s.size() && (std::isdigit(static_cast<unsigned char>(s[j])) || s[j] == '.' || s[j] == 'e' ||
                              s[j] == 'E' || s[j] == '-' || s[j] == '+'))
        ++j;
      out.push_back({Tok::Number, std::string(s.substr(i, j - i))});
      i = j;
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == ':' || c == '`') {
      size_t j = i + 1;
      if (c == '`') {
        j = s.find('`', i + 1);
        if (j == std::string_view::npos) throw BadQuery("unterminated identifier");
        out.push_back({Tok::Ident, std::string(s.substr(i + 1, j - i - 1))});
        i = j + 1;
        continue;
      }
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      out.push_back({Tok::Ident, std::string(s.substr(i, j - i))});
      i = j;
    } else if (c == '(') {
      out.push_back({Tok::LParen, "("});
      ++i;
    } else if (c == ')') {
      out.push_back({Tok::RParen, ")"});
      ++i;
    } else if (c == ',') {
      out.push_back({Tok::Comma, ","});
      ++i;
    } else if (c == '=' || c == '<' || c == '>' || c == '!') {
      std::string op(1, c);
      if (i + 1 < s.size() && (s[i + 1] == '=' || (c == '<' && s[i + 1] == '>'))) op.push_back(s[++i]);
      ++i;
      if (op == "!") throw BadQuery("unexpected '!'");
      out.push_back({Tok::Op, op});
    } else {
      throw BadQuery(std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back({Tok::End, ""});
  return out;
}

struct Node {
  enum Kind { And, Or, Compare, Contains } kind = Compare;
  std::vector<std::unique_ptr<Node>> children;
  std::string field;
  std::string op;
  Tok literal;
};

class WhereParser {
 public:
  explicit WhereParser(std::string_view s) : toks_(lex(s)) {}

  std::unique_ptr<Node> parse() {
    auto n = disjunction();
    if (peek().kind != Tok::End) throw BadQuery("trailing input near '" + peek().text + "'");
    return n;
  }

 private:
  const Tok& peek() const { return toks_[pos_]; }
  const Tok& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  bool keyword(std::string_view k) const { return peek().kind == Tok::Ident && text::to_lower(peek().text) == k; }
  void expect(Tok::Kind k, std::string_view what) {
    if (peek().kind != k) throw BadQuery("expected " + std::string(what));
    next();
  }

  std::unique_ptr<Node> disjunction() {
    auto left = conjunction();
    while (keyword("or")) {
      next();
      auto n = std::make_unique<Node>();
      n->kind = Node::Or;
      n->children.push_back(std::move(left));
      n->children.push_back(conjunction());
      left = std::move(n);
    }
    return left;
  }

  std::unique_ptr<Node> conjunction() {
    auto left = primary();
    while (keyword("and")) {
      next();
      auto n = std::make_unique<Node>();
      n->kind = Node::And;
      n->children.push_back(std::move(left));
      n->children.push_back(primary());
      left = std::move(n);
    }
    return left;
  }

  Tok literal() {
    const Tok& t = peek();
    if (t.kind == Tok::String || t.kind == Tok::Number) return next();
    if (keyword("true") || keyword("false")) return next();
    throw BadQuery("expected a literal near '" + t.text + "'");
  }

  std::unique_ptr<Node> primary() {
    if (peek().kind == Tok::LParen) {
      next();
      auto n = disjunction();
      expect(Tok::RParen, "')'");
      return n;
    }
    auto n = std::make_unique<Node>();
    if (keyword("contains") || keyword("starts_with")) {
      n->kind = Node::Contains;
      n->op = text::to_lower(next().text);
      expect(Tok::LParen, "'('");
      if (peek().kind != Tok::Ident) throw BadQuery("expected a column name");
      n->field = next().text;
      expect(Tok::Comma, "','");
      n->literal = literal();
      expect(Tok::RParen, "')'");
      return n;
    }
    if (peek().kind != Tok::Ident) throw BadQuery("expected a column name near '" + peek().text + "'");
    n->field = next().text;
    if (peek().kind != Tok::Op) throw BadQuery("expected a comparison after " + n->field);
    n->op = next().text;
    n->literal = literal();
    return n;
  }

  std::vector<Tok> toks_;
  size_t pos_ = 0;
};

bool evaluate(const Node& n, const Row& row) {
  switch (n.kind) {
    case Node::And: return evaluate(*n.children[0], row) && evaluate(*n.children[1], row);
    case Node::Or: return evaluate(*n.children[0], row) || evaluate(*n.children[1], row);
    case Node::Contains: {
      auto it = row.find(n.field);
      if (it == row.end() || it->is_null()) return false;
      const std::string cell = as_text(*it);
      if (n.op == "starts_with") return cell.rfind(n.literal.text, 0) == 0;
      return cell.find(n.literal.text) != std::string::npos;
    }
    case Node::Compare: break;
  }
  auto it = row.find(n.field);
  if (it == row.end() || it->is_null()) return false;
  int c = 0;
  if (n.literal.kind == Tok::Number) {
    auto x = as_number(*it);
    if (!x) return false;
    double y = std::stod(n.literal.text);
    c = *x < y ? -1 : (*x > y ? 1 : 0);
  } else {
    const std::string cell = as_text(*it);
    const std::string lit = n.literal.kind == Tok::Ident ? text::to_lower(n.literal.text) : n.literal.text;
    c = cell.compare(lit);
    c = c < 0 ? -1 : (c > 0 ? 1 : 0);
  }
  if (n.op == "=") return c == 0;
  if (n.op == "!=" || n.op == "<>") return c != 0;
  if (n.op == "<") return c < 0;
  if (n.op == "<=") return c <= 0;
  if (n.op == ">") return c > 0;
  if (n.op == ">=") return c >= 0;
  throw BadQuery("unknown operator " + n.op);
}

// ---- $select / $order -----------------------------------------------------

std::vector<std::string> split_top_level(std::string_view s) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  bool quoted = false;
  for (char c : s) {
    if (c == '\'') quoted = !quoted;
    if (!quoted && c == '(') ++depth;
    if (!quoted && c == ')') --depth;
    if (!quoted && depth == 0 && c == ',') {
      out.push_back(text::trim(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!text::trim(cur).empty()) out.push_back(text::trim(cur));
  return out;
}

int compare_cells(const Row& a, const Row& b, const std::string& field) {
  auto ia = a.find(field), ib = b.find(field);
  bool na = ia == a.end() || ia->is_null(), nb = ib == b.end() || ib->is_null();
  if (na || nb) return na == nb ? 0 : (na ? 1 : -1);  // nulls last
  auto xa = as_number(*ia), xb = as_number(*ib);
  if (xa && xb) return *xa < *xb ? -1 : (*xa > *xb ? 1 : 0);
  int c = as_text(*ia).compare(as_text(*ib));
  return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

struct SocrataQuery {
  std::vector<std::string> select;
  std::string where;
  std::string order;
  long long limit = 1000;
  long long offset = 0;
};

long long parse_count(const std::string& s, std::string_view name) {
  long long x = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), x);
  if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size() || x < 0)
    throw BadQuery(std::string(name) + " must be a non-negative integer");
  return x;
}

nlohmann::ordered_json run_socrata(const std::vector<Row>& all, const SocrataQuery& q) {
  std::vector<Row> rows;
  std::unique_ptr<Node> where;
  if (!q.where.empty()) where = WhereParser(q.where).parse();
  for (auto& r : all)
    if (!where || evaluate(*where, r)) rows.push_back(r);

  // Aggregates collapse the filtered set into one row.
  bool aggregate = false;
  for (auto& item : q.select) aggregate = aggregate || item.find('(') != std::string::npos;
  if (aggregate) {
    Row out = Row::object();
    for (auto& item : q.select) {
      auto open = item.find('('), close = item.rfind(')');
      if (open == std::string::npos || close == std::string::npos || close < open)
        throw BadQuery("cannot mix columns and aggregates without $group: " + item);
      const std::string fn = text::to_lower(text::trim(item.substr(0, open)));
      const std::string field = text::trim(item.substr(open + 1, close - open - 1));
      if (fn == "count") {
        out["count"] = std::to_string(rows.size());
        continue;
      }
      if (fn != "avg" && fn != "min" && fn != "max") throw BadQuery("unsupported function " + fn);
      std::vector<double> xs;
      for (auto& r : rows)
        if (auto it = r.find(field); it != r.end())
          if (auto x = as_number(*it)) xs.push_back(*x);
      const std::string key = fn + "_" + field;
      if (xs.empty()) continue;  // Socrata omits null aggregates
      double v = 0;
      if (fn == "avg") {
        long double s = 0;
        for (double x : xs) s += x;
        v = static_cast<double>(s / xs.size());
      } else if (fn == "min") {
        v = *std::min_element(xs.begin(), xs.end());
      } else {
        v = *std::max_element(xs.begin(), xs.end());
      }
      out[key] = format_number(v);
    }
    return nlohmann::ordered_json::array({out});
  }

  if (!q.order.empty()) {
    std::vector<std::pair<std::string, bool>> keys;
    for (auto& part : split_top_level(q.order)) {
      auto words = text::split_words(part);
      if (words.empty() || words.size() > 2) throw BadQuery("bad $order term: " + part);
      bool desc = words.size() == 2 && text::to_lower(words[1]) == "desc";
      if (words.size() == 2 && !desc && text::to_lower(words[1]) != "asc") throw BadQuery("bad direction " + words[1]);
      keys.emplace_back(words[0], desc);
    }
    std::stable_sort(rows.begin(), rows.end(), [&](const Row& a, const Row& b) {
      for (auto& [field, desc] : keys) {
        int c = compare_cells(a, b, field);
        if (c != 0) return desc ? c > 0 : c < 0;
      }
      return false;
    });
  }

  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (long long i = q.offset; i < static_cast<long long>(rows.size()) && i < q.offset + q.limit; ++i) {
    const Row& r = rows[static_cast<size_t>(i)];
    if (q.select.empty() || (q.select.size() == 1 && q.select[0] == "*")) {
      out.push_back(r);
      continue;
    }
    Row projected = Row::object();
    for (auto& f : q.select)
      if (auto it = r.find(f); it != r.end()) projected[f] = *it;
    out.push_back(std::move(projected));
  }
  return out;
}

MockApi::Response error_response(int status, const std::string& message) {
  return {status, {{"error", true}, {"message", message}}};
}

std::string dataset_id(std::string_view file) {
  auto dot = file.rfind(".json");
  return std::string(dot == std::string_view::npos ? file : file.substr(0, dot));
}

}  // namespace

MockApi::MockApi(std::filesystem::path fixtures_root) : root_(std::move(fixtures_root)) {}

void MockApi::add_socrata_dataset(const std::string& id, std::vector<Row> rows) {
  std::lock_guard lock(mutex_);
  rows_["socrata/" + id] = std::move(rows);
}

void MockApi::add_ckan_resource(const std::string& id, std::vector<Row> rows) {
  std::lock_guard lock(mutex_);
  rows_["ckan/" + id] = std::move(rows);
}

std::optional<nlohmann::ordered_json> MockApi::fixture(const std::string& dialect, const std::string& id,
                                                       const std::string& file) const {
  if (root_.empty() || id.empty() || id.find('/') != std::string::npos || id.find("..") != std::string::npos)
    return std::nullopt;
  std::ifstream in(root_ / dialect / id / file);
  if (!in) return std::nullopt;
  auto doc = nlohmann::ordered_json::parse(in, nullptr, false);
  if (doc.is_discarded()) return std::nullopt;
  return doc;
}

// Caller holds mutex_.
const std::vector<Row>* MockApi::rows_for(const std::string& dialect, const std::string& id) {
  const std::string key = dialect + "/" + id;
  if (auto it = rows_.find(key); it != rows_.end()) return &it->second;
  auto doc = fixture(dialect, id, "rows.json");
  if (!doc) return nullptr;
  std::vector<Row> rows;
  const auto& list = doc->is_object() && doc->contains("records") ? (*doc)["records"] : *doc;
  if (!list.is_array()) return nullptr;
  for (auto& r : list) rows.push_back(r);
  return &(rows_[key] = std::move(rows));
}

MockApi::Response MockApi::handle(std::string_view target) {
  std::lock_guard lock(mutex_);
  log_.emplace_back(target);
  const std::string path = std::string(target.substr(0, target.find('?')));
  const auto params = parse_query(target);
  auto param = [&](std::string_view name) -> std::optional<std::string> {
    for (auto& [k, v] : params)
      if (k == name) return v;
    return std::nullopt;
  };

  try {
    if (path.rfind("/resource/", 0) == 0) {
      const std::string id = dataset_id(std::string_view(path).substr(10));
      const auto* rows = rows_for("socrata", id);
      if (!rows) return error_response(404, "dataset " + id + " not found");
      SocrataQuery q;
      for (auto& [k, v] : params) {
        if (k == "$select") q.select = split_top_level(v);
        else if (k == "$where") q.where = v;
        else if (k == "$order") q.order = v;
        else if (k == "$limit") q.limit = parse_count(v, k);
        else if (k == "$offset") q.offset = parse_count(v, k);
        else if (!k.empty() && k[0] == '$') throw BadQuery("unsupported parameter " + k);
      }
      return {200, run_socrata(*rows, q)};
    }
    if (path.rfind("/api/views/metadata/v1/", 0) == 0) {
      if (auto doc = fixture("socrata", dataset_id(std::string_view(path).substr(23)), "metadata.json"))
        return {200, *doc};
      return error_response(404, "no metadata");
    }
    if (path == "/api/views.json") {
      if (auto doc = fixture("socrata", param("id").value_or(""), "views.json")) return {200, *doc};
      return error_response(404, "no view");
    }
    if (path == "/api/3/action/resource_show") {
      if (auto doc = fixture("ckan", param("id").value_or(""), "metadata.json")) return {200, *doc};
      return error_response(404, "no resource");
    }
    if (path == "/api/3/action/datastore_search") {
      const std::string id = param("resource_id").value_or("");
      const auto* rows = rows_for("ckan", id);
      auto recorded = fixture("ckan", id, "datastore_search.json");
      if (!rows && !recorded) return error_response(404, "resource " + id + " not found");
      std::vector<Row> matched;
      if (rows) {
        nlohmann::ordered_json filters = nlohmann::ordered_json::object();
        if (auto f = param("filters")) {
          filters = nlohmann::ordered_json::parse(*f, nullptr, false);
          if (!filters.is_object()) throw BadQuery("filters must be a JSON object");
        }
        for (auto& r : *rows) {
          bool ok = true;
          for (auto& [k, v] : filters.items()) {
            auto it = r.find(k);
            if (it == r.end()) {
              ok = false;
              break;
            }
            auto a = as_number(*it), b = as_number(v);
            ok = (a && b) ? *a == *b : as_text(*it) == as_text(v);
            if (!ok) break;
          }
          if (ok) matched.push_back(r);
        }
      }
      const long long limit = param("limit") ? parse_count(*param("limit"), "limit") : 100;
      const long long offset = param("offset") ? parse_count(*param("offset"), "offset") : 0;
      nlohmann::ordered_json records = nlohmann::ordered_json::array();
      for (long long i = offset; i < static_cast<long long>(matched.size()) && i < offset + limit; ++i)
        records.push_back(matched[static_cast<size_t>(i)]);
      nlohmann::ordered_json fields = nlohmann::ordered_json::array();
      if (recorded && recorded->contains("result") && (*recorded)["result"].contains("fields"))
        fields = (*recorded)["result"]["fields"];
      return {200,
              {{"success", true},
               {"result",
                {{"resource_id", id}, {"fields", fields}, {"records", records}, {"total", matched.size()}}}}};
    }
  } catch (const BadQuery& e) {
    return error_response(400, e.what());
  }
  return error_response(404, "no route for " + path);
}

std::vector<std::string> MockApi::requests() const {
  std::lock_guard lock(mutex_);
  return log_;
}

std::vector<std::string> MockApi::data_requests() const {
  std::lock_guard lock(mutex_);
  std::vector<std::string> out;
  for (auto& t : log_)
    if (t.rfind("/resource/", 0) == 0 || t.rfind("/api/3/action/datastore_search", 0) == 0) out.push_back(t);
  return out;
}

void MockApi::clear_log() {
  std::lock_guard lock(mutex_);
  log_.clear();
}

nlohmann::ordered_json MockTransport::get(const HttpRequestSpec& request) {
  auto res = api_.handle(split_url(request.url).target);
  if (res.status != 200)
    throw Error(ErrorCode::Transport, "GET " + request.url + ": HTTP " + std::to_string(res.status) + " " +
                                          res.body.value("message", std::string()));
  return res.body;
}

}  // namespace odcb

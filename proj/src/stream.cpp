#include "sparsestream/stream.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include <json.hpp>

namespace sparsestream {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MalformedLine: return "MalformedLine";
    case ErrorKind::TurnstileViolation: return "TurnstileViolation";
    case ErrorKind::IdOutOfRange: return "IdOutOfRange";
    case ErrorKind::DeletionBudgetExceeded: return "DeletionBudgetExceeded";
    case ErrorKind::InvalidShapeParams: return "InvalidShapeParams";
    case ErrorKind::NegativeEdgeCount: return "NegativeEdgeCount";
    case ErrorKind::EpsilonOutOfRange: return "EpsilonOutOfRange";
    case ErrorKind::DomainViolation: return "DomainViolation";
    case ErrorKind::CoordinateOutOfRange: return "CoordinateOutOfRange";
    case ErrorKind::IncompatibleSketch: return "IncompatibleSketch";
    case ErrorKind::CorruptSketch: return "CorruptSketch";
    case ErrorKind::DeletionUnsupported: return "DeletionUnsupported";
    case ErrorKind::IncompatibleStreamModel: return "IncompatibleStreamModel";
    case ErrorKind::AllInstancesAborted: return "AllInstancesAborted";
    case ErrorKind::CounterOverflowAbort: return "CounterOverflowAbort";
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::NotAForest: return "NotAForest";
    case ErrorKind::IsolatedVertices: return "IsolatedVertices";
    case ErrorKind::AdjacentPair: return "AdjacentPair";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ReplayAborted: return "ReplayAborted";
  }
  return "Unknown";
}

const char* to_string(StreamModel model) {
  return model == StreamModel::EdgeArrival ? "edge" : "vertex";
}

const char* to_string(StreamOrder order) {
  switch (order) {
    case StreamOrder::Arbitrary: return "arbitrary";
    case StreamOrder::Random: return "random";
    case StreamOrder::Unknown: break;
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// StreamBuilder
// ---------------------------------------------------------------------------

StreamBuilder::StreamBuilder(std::uint32_t n, StreamModel model, double deletion_factor)
    : n_(n),
      model_(model),
      max_deletions_(static_cast<std::size_t>(deletion_factor * static_cast<double>(n))) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "stream needs n >= 1");
  if (model == StreamModel::VertexArrival) arrived_.assign(std::size_t{n} + 1, false);
}

void StreamBuilder::check_id(VertexId id) const {
  if (id < 1 || id > n_) {
    throw Error(ErrorKind::IdOutOfRange,
                "vertex " + std::to_string(id) + " outside [1, " + std::to_string(n_) + "]");
  }
}

void StreamBuilder::push(StreamUpdate update) {
  if (update.is_edge()) {
    if (model_ != StreamModel::EdgeArrival)
      throw Error(ErrorKind::MalformedLine, "edge event in a vertex-arrival stream");
    check_id(update.u);
    check_id(update.v);
    if (update.u == update.v) throw Error(ErrorKind::MalformedLine, "self-loop");
    const std::uint64_t key = Edge(update.u, update.v).key();
    if (update.kind == UpdateKind::EdgeInsert) {
      if (!present_.insert(key).second)
        throw Error(ErrorKind::TurnstileViolation, "insert of an edge already present");
    } else {
      if (present_.erase(key) == 0)
        throw Error(ErrorKind::TurnstileViolation, "delete of an absent edge");
      if (++deletions_ > max_deletions_)
        throw Error(ErrorKind::DeletionBudgetExceeded,
                    "more than " + std::to_string(max_deletions_) + " deletions");
    }
  } else {
    if (model_ != StreamModel::VertexArrival)
      throw Error(ErrorKind::MalformedLine, "vertex arrival in an edge-arrival stream");
    check_id(update.u);
    if (arrived_[update.u]) throw Error(ErrorKind::MalformedLine, "vertex arrives twice");
    for (VertexId w : update.neighbors) {
      check_id(w);
      if (w == update.u) throw Error(ErrorKind::MalformedLine, "self-loop");
      if (!arrived_[w])
        throw Error(ErrorKind::MalformedLine,
                    "neighbour " + std::to_string(w) + " has not arrived yet");
      if (!present_.insert(Edge(update.u, w).key()).second)
        throw Error(ErrorKind::MalformedLine, "repeated neighbour");
    }
    arrived_[update.u] = true;
  }
  updates_.push_back(std::move(update));
}

StreamSequence StreamBuilder::build() && {
  StreamSequence s;
  s.n_ = n_;
  s.model_ = model_;
  s.order_ = order_;
  s.deletion_count_ = deletions_;
  s.final_edges_.reserve(present_.size());
  std::vector<std::uint32_t> degree(std::size_t{n_} + 1, 0);
  for (std::uint64_t key : present_) {
    const Edge e(static_cast<VertexId>(key >> 32), static_cast<VertexId>(key & 0xffffffffu));
    s.final_edges_.push_back(e);
    ++degree[e.u];
    ++degree[e.v];
  }
  std::sort(s.final_edges_.begin(), s.final_edges_.end());
  s.has_isolated_ = std::any_of(degree.begin() + 1, degree.end(),
                                [](std::uint32_t d) { return d == 0; });
  s.updates_ = std::move(updates_);
  return s;
}

// ---------------------------------------------------------------------------
// Text format
// ---------------------------------------------------------------------------

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::optional<std::uint64_t> to_uint(std::string_view s) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

VertexId parse_id(std::string_view tok, std::size_t line) {
  auto v = to_uint(trim(tok));
  if (!v) throw ParseError(ErrorKind::MalformedLine, line, "bad vertex id '" + std::string(tok) + "'");
  if (*v > 0xffffffffULL) throw ParseError(ErrorKind::IdOutOfRange, line, "vertex id too large");
  return static_cast<VertexId>(*v);
}

struct Header {
  std::uint32_t n;
  StreamModel model;
};

std::optional<Header> parse_header(std::string_view line) {
  std::optional<std::uint64_t> n;
  std::optional<StreamModel> model;
  for (std::string_view tok : split_ws(line.substr(1))) {
    if (tok.starts_with("n=")) {
      n = to_uint(tok.substr(2));
    } else if (tok == "model=edge") {
      model = StreamModel::EdgeArrival;
    } else if (tok == "model=vertex") {
      model = StreamModel::VertexArrival;
    }
  }
  if (!n || !model || *n == 0 || *n > 0xffffffffULL) return std::nullopt;
  return Header{static_cast<std::uint32_t>(*n), *model};
}

}  // namespace

StreamSequence parse_stream(std::string_view text, double deletion_factor) {
  std::optional<StreamBuilder> builder;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = trim(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (line.empty()) continue;
    if (line.front() == '#') {
      if (!builder) {
        if (auto h = parse_header(line)) builder.emplace(h->n, h->model, deletion_factor);
      }
      continue;
    }
    if (!builder) throw ParseError(ErrorKind::MalformedLine, line_no, "event before '# n=... model=...' header");

    StreamUpdate update;
    if (line.front() == '+' || line.front() == '-') {
      const auto toks = split_ws(line);
      if (toks.size() != 3 || toks[0].size() != 1)
        throw ParseError(ErrorKind::MalformedLine, line_no, "expected '+|- u v'");
      const VertexId a = parse_id(toks[1], line_no);
      const VertexId b = parse_id(toks[2], line_no);
      update = line.front() == '+' ? StreamUpdate::insert(a, b) : StreamUpdate::erase(a, b);
    } else if (line.front() == 'v') {
      const auto colon = line.find(':');
      if (colon == std::string_view::npos)
        throw ParseError(ErrorKind::MalformedLine, line_no, "expected 'v id : neighbours'");
      const VertexId id = parse_id(line.substr(1, colon - 1), line_no);
      std::vector<VertexId> prior;
      std::string_view rest = trim(line.substr(colon + 1));
      while (!rest.empty()) {
        const auto comma = rest.find(',');
        prior.push_back(parse_id(rest.substr(0, comma), line_no));
        if (comma == std::string_view::npos) break;
        rest = trim(rest.substr(comma + 1));
        if (rest.empty()) throw ParseError(ErrorKind::MalformedLine, line_no, "trailing comma");
      }
      update = StreamUpdate::arrival(id, std::move(prior));
    } else {
      throw ParseError(ErrorKind::MalformedLine, line_no, "unknown event '" + std::string(line) + "'");
    }

    try {
      builder->push(std::move(update));
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(e.kind(), line_no, e.what());
    }
  }
  if (!builder) throw ParseError(ErrorKind::MalformedLine, line_no, "missing '# n=... model=...' header");
  return std::move(*builder).build();
}

std::string serialize_stream(const StreamSequence& stream) {
  std::ostringstream out;
  out << "# n=" << stream.n() << " model=" << to_string(stream.model()) << '\n';
  for (const StreamUpdate& u : stream.updates()) {
    switch (u.kind) {
      case UpdateKind::EdgeInsert: out << "+ " << u.u << ' ' << u.v << '\n'; break;
      case UpdateKind::EdgeDelete: out << "- " << u.u << ' ' << u.v << '\n'; break;
      case UpdateKind::VertexArrival: {
        out << "v " << u.u << " :";
        for (std::size_t i = 0; i < u.neighbors.size(); ++i)
          out << (i == 0 ? " " : ",") << u.neighbors[i];
        out << '\n';
        break;
      }
    }
  }
  return out.str();
}

EdgeCounters exact_counters(const StreamSequence& stream) {
  std::int64_t m = 0;
  for (const StreamUpdate& u : stream.updates()) {
    m += u.is_edge() ? u.sign() : static_cast<std::int64_t>(u.neighbors.size());
    if (m < 0) throw Error(ErrorKind::NegativeEdgeCount, "edge counter went negative");
  }
  return {m, static_cast<std::int64_t>(stream.n()) - m};
}

std::string to_json(const GroundTruth& t) {
  nlohmann::ordered_json j;
  j["n"] = t.n;
  j["m"] = t.m;
  j["lambda"] = t.lambda.str();
  j["lambda_value"] = static_cast<double>(t.lambda);
  j["avg_degree"] = t.avg_degree.str();
  j["max_degree"] = t.max_degree;
  j["components"] = t.components;
  j["isolated"] = t.isolated;
  j["deg1"] = t.deg1;
  j["deg_ge2"] = t.deg_ge2;
  j["supp"] = t.supp;
  j["is_forest"] = t.is_forest;
  j["beta"] = t.beta ? nlohmann::ordered_json(*t.beta) : nlohmann::ordered_json(nullptr);
  j["gamma"] = t.gamma ? nlohmann::ordered_json(*t.gamma) : nlohmann::ordered_json(nullptr);
  j["phi"] = t.phi ? nlohmann::ordered_json(*t.phi) : nlohmann::ordered_json(nullptr);
  return j.dump();
}

}  // namespace sparsestream

#include "vmorse/persist.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <chrono>
#include <cstdio>
#include <cstring>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>
#include <vector>

#include "json.hpp"

namespace vm {

namespace fs = std::filesystem;
using json = nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot read " + path);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

std::string digest_hex(const std::string& bytes) {
  uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// ---- seeds ----

namespace {

struct Token {
  std::string text;
  int col;
};

std::vector<Token> split_line(const std::string& line) {
  std::vector<Token> out;
  size_t i = 0;
  while (i < line.size()) {
    if (line[i] == '#') break;
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])) && line[j] != '#') ++j;
    out.push_back({line.substr(i, j - i), static_cast<int>(i) + 1});
    i = j;
  }
  return out;
}

int to_int(const Token& t, int line) {
  try {
    size_t used = 0;
    int v = std::stoi(t.text, &used);
    if (used != t.text.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw ParseError(line, t.col, "expected an integer, got '" + t.text + "'");
  }
}

bool to_sign(const Token& t, int line) {
  if (t.text == "neg") return true;
  if (t.text == "pos") return false;
  throw ParseError(line, t.col, "expected neg or pos, got '" + t.text + "'");
}

}  // namespace

Morsification parse_seed(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  int lineno = 0, mu = -1;
  enum { kHead, kMatrix, kPoints } section = kHead;
  std::vector<std::vector<int>> rows;
  std::vector<PointAttr> pts;
  int matrix_line = 0;
  while (std::getline(is, line)) {
    ++lineno;
    auto tok = split_line(line);
    if (tok.empty()) continue;
    if (tok[0].text == "mu") {
      if (tok.size() != 2) throw ParseError(lineno, tok[0].col, "expected 'mu <n>'");
      mu = to_int(tok[1], lineno);
      if (mu < 1 || mu > kMaxMu) throw ParseError(lineno, tok[1].col, "mu must be in 1.." + std::to_string(kMaxMu));
      continue;
    }
    if (tok[0].text == "matrix") {
      section = kMatrix;
      matrix_line = lineno;
      continue;
    }
    if (tok[0].text == "points") {
      section = kPoints;
      continue;
    }
    if (mu < 0) throw ParseError(lineno, tok[0].col, "'mu' must come first");
    if (section == kMatrix) {
      int row = static_cast<int>(rows.size()) + 1;
      if (row > mu) throw ParseError(lineno, tok[0].col, "more than " + std::to_string(mu) + " matrix rows");
      if (static_cast<int>(tok.size()) != mu)
        throw ParseError(lineno, tok[0].col,
                         "matrix row " + std::to_string(row) + " has " + std::to_string(tok.size()) + " entries, expected " +
                             std::to_string(mu));
      std::vector<int> r;
      for (const Token& t : tok) r.push_back(to_int(t, lineno));
      rows.push_back(std::move(r));
    } else if (section == kPoints) {
      PointAttr p;
      if (tok[0].text == "real") {
        if (tok.size() != 3) throw ParseError(lineno, tok[0].col, "expected 'real <inertia> neg|pos'");
        p.real = true;
        p.inertia = to_int(tok[1], lineno);
        if (p.inertia < 0 || p.inertia > 2) throw ParseError(lineno, tok[1].col, "inertia must be 0, 1 or 2");
        p.negative = to_sign(tok[2], lineno);
      } else if (tok[0].text == "complex") {
        if (tok.size() != 2) throw ParseError(lineno, tok[0].col, "expected 'complex neg|pos'");
        p.real = false;
        p.negative = to_sign(tok[1], lineno);
      } else {
        throw ParseError(lineno, tok[0].col, "expected 'real' or 'complex', got '" + tok[0].text + "'");
      }
      pts.push_back(p);
    } else {
      throw ParseError(lineno, tok[0].col, "unexpected '" + tok[0].text + "'");
    }
  }
  if (mu < 0) throw ParseError(lineno, 1, "missing 'mu'");
  if (static_cast<int>(rows.size()) != mu)
    throw ParseError(matrix_line, 1, "matrix has " + std::to_string(rows.size()) + " rows, expected " + std::to_string(mu));
  if (static_cast<int>(pts.size()) != mu)
    throw ParseError(lineno, 1, "points has " + std::to_string(pts.size()) + " entries, expected " + std::to_string(mu));
  return validate_state(rows, pts);
}

Morsification load_seed(const std::string& path) { return parse_seed(read_file(path)); }

std::string format_seed(const Morsification& s, const std::string& comment) {
  std::ostringstream os;
  if (!comment.empty()) {
    std::istringstream cs(comment);
    std::string l;
    while (std::getline(cs, l)) os << "# " << l << "\n";
  }
  os << "mu " << s.mu << "\nmatrix\n";
  for (int i = 0; i < s.mu; ++i) {
    for (int j = 0; j < s.mu; ++j) {
      os.width(j ? 3 : 2);
      os << s.g[i][j];
    }
    os << "\n";
  }
  os << "points\n";
  for (int i = 0; i < s.mu; ++i) {
    const char* sg = i < s.neg ? "neg" : "pos";
    if (is_real(s.kind[i])) os << "real " << int(s.kind[i]) << " " << sg << "\n";
    else os << "complex " << sg << "\n";
  }
  return os.str();
}

// ---- manifest ----

std::string code_version() { return "vmorse 1.0.0"; }

std::string now_utc() {
  std::time_t t = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

std::string manifest_to_json(const Manifest& m) {
  json j;
  j["format"] = m.format;
  j["code_version"] = m.code_version;
  j["seed"] = {{"path", m.seed_path}, {"digest", m.seed_digest}};
  j["config"] = {{"mode", to_string(m.config.mode)},
                 {"m_bound", m.config.m_bound},
                 {"gauge", to_string(m.config.gauge)},
                 {"birth_rule", to_string(m.config.birth)},
                 {"complex_swap_rule", to_string(m.config.complex_swap)},
                 {"pair_layout", to_string(m.config.layout)}};
  j["budget"] = {{"max_states", m.budget.max_states}, {"mem_bytes", m.budget.mem_bytes}, {"seconds", m.budget.seconds}};
  j["threads"] = m.threads;
  j["started"] = m.started;
  j["finished"] = m.finished;
  j["closed"] = m.closed;
  j["status"] = m.status;
  j["total"] = m.total;
  json h = json::object();
  for (auto [ind, c] : m.ind_histogram) h[std::to_string(ind)] = c;
  j["ind_histogram"] = h;
  j["seconds"] = m.seconds;
  j["has_components"] = m.has_components;
  return j.dump(2) + "\n";
}

Manifest manifest_from_json(const std::string& text) {
  json j = json::parse(text);
  Manifest m;
  m.format = j.at("format").get<int>();
  m.code_version = j.at("code_version").get<std::string>();
  m.seed_path = j.at("seed").at("path").get<std::string>();
  m.seed_digest = j.at("seed").at("digest").get<std::string>();
  const json& c = j.at("config");
  m.config.mode = parse_mode(c.at("mode").get<std::string>());
  m.config.m_bound = c.at("m_bound").get<int>();
  m.config.gauge = parse_gauge(c.at("gauge").get<std::string>());
  m.config.birth = parse_birth_rule(c.at("birth_rule").get<std::string>());
  m.config.complex_swap = parse_complex_swap_rule(c.at("complex_swap_rule").get<std::string>());
  m.config.layout = parse_pair_layout(c.at("pair_layout").get<std::string>());
  m.budget.max_states = j.at("budget").at("max_states").get<uint64_t>();
  m.budget.mem_bytes = j.at("budget").at("mem_bytes").get<uint64_t>();
  m.budget.seconds = j.at("budget").at("seconds").get<double>();
  m.threads = j.at("threads").get<int>();
  m.started = j.at("started").get<std::string>();
  m.finished = j.at("finished").get<std::string>();
  m.closed = j.at("closed").get<bool>();
  m.status = j.at("status").get<std::string>();
  m.total = j.at("total").get<uint64_t>();
  for (auto& [k, v] : j.at("ind_histogram").items()) m.ind_histogram[std::stoi(k)] = v.get<uint64_t>();
  m.seconds = j.at("seconds").get<double>();
  m.has_components = j.value("has_components", false);
  return m;
}

void write_manifest(const std::string& dir, const Manifest& m) {
  const std::string path = (fs::path(dir) / "manifest.json").string();
  const std::string tmp = path + ".tmp";
  {
    std::ofstream os(tmp, std::ios::trunc);
    if (!os) throw std::runtime_error("cannot write " + tmp);
    os << manifest_to_json(m);
  }
  fs::rename(tmp, path);
}

Manifest read_manifest(const std::string& dir) {
  const std::string path = (fs::path(dir) / "manifest.json").string();
  if (!fs::exists(path)) throw std::runtime_error("no run at " + dir + " (manifest.json missing)");
  return manifest_from_json(read_file(path));
}

// ---- lock ----

RunLock::RunLock(const std::string& dir) {
  fs::create_directories(dir);
  path_ = (fs::path(dir) / "lock").string();
  int fd = ::open(path_.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
  if (fd < 0) {
    std::string why = errno == EEXIST ? "held by another process (remove " + path_ + " if stale)" : std::strerror(errno);
    path_.clear();
    throw LockError("run directory " + dir + " is locked: " + why);
  }
  std::string pid = std::to_string(::getpid()) + "\n";
  if (::write(fd, pid.data(), pid.size()) < 0) {
    // the lock holds regardless of its content
  }
  ::close(fd);
}

RunLock::~RunLock() {
  if (!path_.empty()) ::unlink(path_.c_str());
}

// ---- binary files ----

namespace {

constexpr uint32_t kStatesVersion = 1;
constexpr uint32_t kComponentsVersion = 1;

template <class T>
void put(std::ostream& os, const T& v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <class T>
T get(std::istream& is) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof v);
  if (!is) throw std::runtime_error("truncated file");
  return v;
}

std::vector<uint32_t> sorted_order(const StateStore& store) {
  std::vector<uint32_t> order(store.size());
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](uint32_t a, uint32_t b) { return store[a].key < store[b].key; });
  return order;
}

void expect_magic(std::istream& is, const char* magic, const std::string& path) {
  char m[4];
  is.read(m, 4);
  if (!is || std::memcmp(m, magic, 4) != 0) throw std::runtime_error(path + ": bad magic");
}

}  // namespace

void write_states(const std::string& path, const StateStore& store) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("cannot write " + path);
  os.write("VMST", 4);
  put(os, kStatesVersion);
  put(os, static_cast<uint32_t>(sizeof(Key) + 4));
  put(os, static_cast<uint64_t>(store.size()));
  for (uint32_t i : sorted_order(store)) {
    os.write(reinterpret_cast<const char*>(store[i].key.b.data()), sizeof(Key));
    put(os, store[i].conj);
  }
  if (!os) throw std::runtime_error("short write on " + path);
}

StateStore read_states(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot read " + path);
  expect_magic(is, "VMST", path);
  if (get<uint32_t>(is) != kStatesVersion) throw std::runtime_error(path + ": unsupported version");
  if (get<uint32_t>(is) != sizeof(Key) + 4) throw std::runtime_error(path + ": unexpected record size");
  uint64_t n = get<uint64_t>(is);
  StateStore st;
  st.reserve(n);
  for (uint64_t i = 0; i < n; ++i) {
    Record r;
    is.read(reinterpret_cast<char*>(r.key.b.data()), sizeof(Key));
    r.conj = get<uint32_t>(is);
    st.insert(r);
  }
  return st;
}

void write_components(const std::string& path, const StateStore& store, const Partition& p) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("cannot write " + path);
  os.write("VMCP", 4);
  put(os, kComponentsVersion);
  put(os, static_cast<uint64_t>(p.components.size()));
  for (const ComponentSummary& c : p.components) {
    put(os, static_cast<uint64_t>(c.card));
    put(os, static_cast<int32_t>(c.ind));
    uint8_t flags = (c.all_real ? 1 : 0) | (c.has_nonreal ? 2 : 0) | (c.lowest_is_saddle ? 4 : 0);
    put(os, flags);
    put(os, static_cast<uint8_t>(c.min_real_points));
    put(os, static_cast<uint16_t>(0));
    os.write(reinterpret_cast<const char*>(c.representative.b.data()), sizeof(Key));
  }
  put(os, static_cast<uint64_t>(store.size()));
  for (uint32_t i : sorted_order(store)) put(os, p.component_of[i]);
  if (!os) throw std::runtime_error("short write on " + path);
}

Partition read_components(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot read " + path);
  expect_magic(is, "VMCP", path);
  if (get<uint32_t>(is) != kComponentsVersion) throw std::runtime_error(path + ": unsupported version");
  Partition p;
  uint64_t nc = get<uint64_t>(is);
  for (uint64_t i = 0; i < nc; ++i) {
    ComponentSummary c;
    c.card = get<uint64_t>(is);
    c.ind = get<int32_t>(is);
    uint8_t flags = get<uint8_t>(is);
    c.all_real = flags & 1;
    c.has_nonreal = flags & 2;
    c.lowest_is_saddle = flags & 4;
    c.min_real_points = get<uint8_t>(is);
    get<uint16_t>(is);
    is.read(reinterpret_cast<char*>(c.representative.b.data()), sizeof(Key));
    p.components.push_back(c);
  }
  uint64_t n = get<uint64_t>(is);
  p.component_of.resize(n);
  for (uint64_t i = 0; i < n; ++i) p.component_of[i] = get<uint32_t>(is);
  return p;
}

}  // namespace vm

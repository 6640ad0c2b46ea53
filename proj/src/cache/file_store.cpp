#include "cache/file_store.hpp"

#include <openssl/evp.h>
#include <unistd.h>

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace mgr {

namespace fs = std::filesystem;

namespace {

constexpr const char* kMagic = "MSYMMAT";
constexpr int kVersion = 1;

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) throw std::runtime_error("SHA256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

std::string encode_matrix(const IntMatrix& m) {
  std::ostringstream os;
  size_t cols = m.empty() ? 0 : m[0].size();
  os << kMagic << ' ' << kVersion << ' ' << m.size() << ' ' << cols << '\n';
  for (const auto& row : m) {
    for (size_t j = 0; j < row.size(); ++j) os << (j ? " " : "") << row[j].get_str();
    os << '\n';
  }
  std::string body = os.str();
  return body + "SHA256 " + sha256_hex(body) + "\n";
}

std::optional<IntMatrix> decode_matrix(const std::string& text) {
  auto tag = text.rfind("SHA256 ");
  if (tag == std::string::npos || (tag > 0 && text[tag - 1] != '\n')) return std::nullopt;
  std::string body = text.substr(0, tag);
  std::string digest = text.substr(tag + 7);
  while (!digest.empty() && (digest.back() == '\n' || digest.back() == '\r')) digest.pop_back();
  if (digest != sha256_hex(body)) return std::nullopt;

  std::istringstream in(body);
  std::string magic;
  int version = 0;
  long rows = -1, cols = -1;
  if (!(in >> magic >> version >> rows >> cols) || magic != kMagic || version != kVersion || rows < 0 || cols < 0) return std::nullopt;
  IntMatrix m(rows, std::vector<Int>(cols));
  std::string tok;
  for (long i = 0; i < rows; ++i) {
    for (long j = 0; j < cols; ++j) {
      if (!(in >> tok) || m[i][j].set_str(tok, 10) != 0) return std::nullopt;
    }
  }
  if (in >> tok) return std::nullopt;
  return m;
}

fs::path default_cache_dir() {
  if (const char* c = std::getenv("MGR_CACHE"); c && *c) return c;
  if (const char* x = std::getenv("XDG_CACHE_HOME"); x && *x) return fs::path(x) / "mgr";
  if (const char* h = std::getenv("HOME"); h && *h) return fs::path(h) / ".cache" / "mgr";
  return fs::path(".cache") / "mgr";
}

FileMatrixStore::FileMatrixStore(fs::path root) : root_(std::move(root)) {}

fs::path FileMatrixStore::entry_path(int64_t level, int weight, const std::string& label) const {
  return root_ / "msym_v1" / ("L" + std::to_string(level) + "_W" + std::to_string(weight)) / (label + ".mat");
}

void FileMatrixStore::warn(std::string w) {
  std::lock_guard<std::mutex> lock(mu_);
  warnings_.push_back(std::move(w));
}

std::vector<std::string> FileMatrixStore::take_warnings() {
  std::lock_guard<std::mutex> lock(mu_);
  return std::exchange(warnings_, {});
}

std::optional<IntMatrix> FileMatrixStore::load(int64_t level, int weight, const std::string& label) {
  fs::path p = entry_path(level, weight, label);
  std::error_code ec;
  if (!fs::exists(p, ec)) {
    ++misses_;
    return std::nullopt;
  }
  auto m = decode_matrix(read_file(p));
  if (!m) {
    warn("cache entry " + p.string() + " failed verification and was discarded");
    fs::remove(p, ec);
    ++misses_;
    return std::nullopt;
  }
  ++hits_;
  return m;
}

void FileMatrixStore::store(int64_t level, int weight, const std::string& label, const IntMatrix& m) {
  static std::atomic<unsigned> counter{0};
  fs::path p = entry_path(level, weight, label);
  std::error_code ec;
  fs::create_directories(p.parent_path(), ec);
  if (ec) {
    warn("cannot create cache directory " + p.parent_path().string() + ": " + ec.message());
    return;
  }
  fs::path tmp = p;
  tmp += ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter++);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << encode_matrix(m);
    out.close();
    if (!out) {
      warn("cannot write cache entry " + tmp.string());
      fs::remove(tmp, ec);
      return;
    }
  }
  fs::rename(tmp, p, ec);
  if (ec) {
    warn("cannot publish cache entry " + p.string() + ": " + ec.message());
    fs::remove(tmp, ec);
  }
}

}  // namespace mgr

#pragma once

#include <filesystem>
#include <mutex>
#include <string>
#include <vector>

#include "modsym/space.hpp"

namespace mgr {

// On-disk operator matrices under <root>/msym_v1/L{level}_W{weight}/{label}.mat:
//
//   MSYMMAT 1 <rows> <cols>
//   <row of decimal integers>
//   ...
//   SHA256 <hex digest of every preceding byte>
//
// Entries that fail to parse or verify are removed and reported as misses.
// I/O problems become warnings; they never change a result.
class FileMatrixStore : public MatrixStore {
 public:
  explicit FileMatrixStore(std::filesystem::path root);

  std::optional<IntMatrix> load(int64_t level, int weight, const std::string& label) override;
  void store(int64_t level, int weight, const std::string& label, const IntMatrix& m) override;

  std::filesystem::path entry_path(int64_t level, int weight, const std::string& label) const;
  const std::filesystem::path& root() const { return root_; }

  std::vector<std::string> take_warnings();
  int64_t hits() const { return hits_; }
  int64_t misses() const { return misses_; }

 private:
  void warn(std::string w);

  std::filesystem::path root_;
  std::mutex mu_;
  std::vector<std::string> warnings_;
  int64_t hits_ = 0;
  int64_t misses_ = 0;
};

std::string sha256_hex(const std::string& data);
std::string encode_matrix(const IntMatrix& m);
// nullopt when the text is not a valid, verified entry.
std::optional<IntMatrix> decode_matrix(const std::string& text);

// $MGR_CACHE, else ${XDG_CACHE_HOME:-~/.cache}/mgr.
std::filesystem::path default_cache_dir();

}  // namespace mgr

#pragma once

#include "deltalab/store/hash.hpp"
#include "deltalab/store/records.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace deltalab {

inline constexpr int kStoreVersion = 1;

struct StoreError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct StoreVersionError : StoreError {
  using StoreError::StoreError;
};

/// Configuration of one record log: a (degree, selection) pair.
struct StoreSelection {
  int degree = 0;
  std::string selection;
  std::string policy;
  BigInt disc_bound;
  bool complete = true;
  std::string caveat;

  std::string log_name() const {
    return "records-D" + std::to_string(degree) + "-" + git_blob_sha1(selection + "\n" + policy + "\n").substr(0, 12) + ".jsonl";
  }
};

/// Census store directory:
///   manifest.json   version, conventions, one entry per record log
///   index.json      class_id -> byte offset, per log
///   records-*.jsonl append-only record logs
/// Single writer. A torn trailing line left by an interrupted writer is
/// ignored on read and cut off before the next append.
class CensusStore {
public:
  static json conventions() {
    return {{"coefficients", "constant term first"},
            {"delta", "minimal Weil height over generators, stored as the measure polynomial and degree"},
            {"discriminant", "discriminant of the maximal order"},
            {"classes", "isomorphism classes over Q"},
            {"precision_cap_bits", precision_cap()}};
  }

  /// Opens or creates the store at `dir`; refuses a manifest of another version.
  static CensusStore open(const std::filesystem::path &dir) {
    CensusStore s;
    s.dir_ = dir;
    std::filesystem::create_directories(dir);
    auto mpath = dir / "manifest.json";
    if (std::filesystem::exists(mpath)) {
      std::ifstream in(mpath);
      try {
        s.manifest_ = json::parse(in);
      } catch (const json::exception &e) {
        throw StoreError("store manifest " + mpath.string() + " is not valid JSON: " + e.what());
      }
      int v = s.manifest_.value("version", 0);
      if (v != kStoreVersion)
        throw StoreVersionError("store " + dir.string() + " has version " + std::to_string(v) + ", this build reads version " +
                                std::to_string(kStoreVersion) + "; rebuild it with `census build --store NEWDIR` or convert the records to format version " +
                                std::to_string(kStoreVersion));
    } else {
      s.manifest_ = {{"version", kStoreVersion}, {"conventions", conventions()}, {"selections", json::object()}};
      s.write_manifest();
    }
    s.rebuild_index();
    return s;
  }

  const std::filesystem::path &dir() const { return dir_; }
  const json &manifest() const { return manifest_; }

  /// Registers (or widens) a selection in the manifest; returns its log name.
  std::string register_selection(const StoreSelection &sel) {
    std::string log = sel.log_name();
    json &entry = manifest_["selections"][log];
    BigInt bound = sel.disc_bound;
    if (entry.contains("disc_bound")) bound = std::max(bound, parse_integer(entry["disc_bound"].get<std::string>()));
    entry = {{"degree", sel.degree},
             {"selection", sel.selection},
             {"policy", sel.policy},
             {"disc_bound", bound.get_str()},
             {"complete", sel.complete}};
    if (!sel.caveat.empty()) entry["caveat"] = sel.caveat;
    manifest_["conventions"] = conventions();
    write_manifest();
    return log;
  }

  std::vector<std::string> logs() const {
    std::vector<std::string> out;
    for (auto it = manifest_["selections"].begin(); it != manifest_["selections"].end(); ++it) out.push_back(it.key());
    return out;
  }

  /// Complete records of a log in file order.
  std::vector<CensusRecord> read_log(const std::string &log) const {
    std::vector<CensusRecord> out;
    std::string text = read_text(dir_ / log);
    size_t pos = 0;
    for (size_t nl; (nl = text.find('\n', pos)) != std::string::npos; pos = nl + 1) {
      std::string line = text.substr(pos, nl - pos);
      if (line.empty()) continue;
      try {
        out.push_back(record_from_json(json::parse(line)));
      } catch (const json::exception &e) {
        throw StoreError(log + ": unreadable record at byte " + std::to_string(pos) + ": " + e.what());
      }
    }
    return out;
  }

  std::vector<CensusRecord> read_all() const {
    std::vector<CensusRecord> out;
    for (const auto &log : logs())
      for (auto &r : read_log(log)) out.push_back(std::move(r));
    return out;
  }

  bool contains(const std::string &log, const std::string &class_id) const {
    return index_.contains(log) && index_[log].contains(class_id);
  }

  /// Appends a record unless its class is already stored. Returns whether it was written.
  bool append(const std::string &log, const CensusRecord &r) {
    if (contains(log, r.class_id)) return false;
    auto path = dir_ / log;
    std::uintmax_t size = std::filesystem::exists(path) ? std::filesystem::file_size(path) : 0;
    std::uintmax_t valid = complete_prefix(path, size);
    if (valid != size) std::filesystem::resize_file(path, valid);
    std::string line = record_line(r) + "\n";
    {
      std::ofstream out(path, std::ios::binary | std::ios::app);
      out << line;
      out.flush();
      if (!out) throw StoreError("cannot append to " + path.string());
    }
    index_[log][r.class_id] = valid;
    write_atomic(dir_ / "index.json", index_.dump(2) + "\n");
    return true;
  }

private:
  std::filesystem::path dir_;
  json manifest_;
  json index_;

  static std::string read_text(const std::filesystem::path &p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) return {};
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  static std::uintmax_t complete_prefix(const std::filesystem::path &p, std::uintmax_t size) {
    if (size == 0) return 0;
    std::string text = read_text(p);
    auto nl = text.rfind('\n');
    return nl == std::string::npos ? 0 : nl + 1;
  }

  static void write_atomic(const std::filesystem::path &p, const std::string &text) {
    auto tmp = p;
    tmp += ".tmp";
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      out << text;
      if (!out) throw StoreError("cannot write " + tmp.string());
    }
    std::filesystem::rename(tmp, p);
  }

  /// The index is derived from the logs, so a writer stopped between the
  /// log append and the index update leaves nothing stale behind.
  void rebuild_index() {
    index_ = json::object();
    for (const auto &log : logs()) {
      json &idx = index_[log];
      idx = json::object();
      std::string text = read_text(dir_ / log);
      size_t pos = 0;
      for (size_t nl; (nl = text.find('\n', pos)) != std::string::npos; pos = nl + 1) {
        if (nl == pos) continue;
        try {
          idx[json::parse(text.substr(pos, nl - pos)).at("class_id").get<std::string>()] = pos;
        } catch (const json::exception &e) {
          throw StoreError(log + ": unreadable record at byte " + std::to_string(pos) + ": " + e.what());
        }
      }
    }
    write_atomic(dir_ / "index.json", index_.dump(2) + "\n");
  }

  void write_manifest() { write_atomic(dir_ / "manifest.json", manifest_.dump(2) + "\n"); }
};

/// Appends every record not yet stored, in the given order.
inline size_t write_records(CensusStore &store, const std::string &log, const std::vector<CensusRecord> &records) {
  size_t n = 0;
  for (const auto &r : records) n += store.append(log, r) ? 1 : 0;
  return n;
}

inline std::vector<CensusRecord> read_records(const CensusStore &store, const std::string &log) { return store.read_log(log); }

} // namespace deltalab

#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "markgame/game.hpp"
#include "markgame/lattice.hpp"
#include "markgame/strategy.hpp"

namespace markgame {

/// Error carrying an HTTP-style status (400 bad request, 404 unknown session, 409 rejected move).
class ServiceError : public std::runtime_error {
 public:
  ServiceError(int status, const std::string& what, nlohmann::json detail = nullptr)
      : std::runtime_error(what), status(status), detail(std::move(detail)) {}
  int status;
  nlohmann::json detail;
};

struct SessionConfig {
  std::string family = "T";
  int rows = 3;
  int cols = 3;
  std::string base = "T";
  int insertions = -1;
  Side human = Side::Bob;
  std::string machine = "alice:angle";
  std::uint64_t seed = 0;

  static SessionConfig from_json(const nlohmann::json& body);
  nlohmann::json to_json() const;
};

/// Parses "v:12" (vertex id) or "e:7" (edge position).
Move parse_object(const PlanarGraph& graph, std::string_view text);

/// Strategy context for a bundle, including the core used by alice:extension.
StrategyContext context_for(const LatticeBundle& bundle, std::uint64_t seed);

/**
 * In-memory live games. Each session owns its machine strategy and an
 * immutable snapshot of the game; mutations of one session are serialized
 * (a second concurrent submission is rejected with 409), reads only load the
 * current snapshot.
 */
class SessionManager {
 public:
  /// `id_seed` makes ids reproducible in tests; by default they come from std::random_device.
  explicit SessionManager(std::optional<std::uint64_t> id_seed = std::nullopt);
  ~SessionManager();

  nlohmann::json create(const SessionConfig& config);
  nlohmann::json get(const std::string& id) const;
  /// `expected_ply`, when given, must equal the number of half-moves played so far.
  nlohmann::json submit(const std::string& id, const std::string& object,
                        std::optional<int> expected_ply = std::nullopt);
  nlohmann::json hint(const std::string& id) const;
  nlohmann::json transcript(const std::string& id) const;
  void snapshot(const std::string& id, const std::filesystem::path& path) const;
  std::size_t size() const;

 private:
  struct Session;
  std::shared_ptr<Session> find(const std::string& id) const;
  std::string new_id();

  mutable std::shared_mutex mutex_;
  std::unordered_map<std::string, std::shared_ptr<Session>> sessions_;
  std::mutex id_mutex_;
  std::mt19937_64 id_rng_;
  bool seeded_from_device_ = false;
};

}  // namespace markgame

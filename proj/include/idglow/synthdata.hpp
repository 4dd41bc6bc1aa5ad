#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "idglow/tensor.hpp"

#include "json.hpp"

namespace idglow {

enum class Task { group, age };

const char* task_name(Task task);
Task task_from_name(const std::string& name);

// Dimensions and calibration constants of the synthetic domain. Chosen so
// that brute-force oracles and finite-difference checks run in seconds.
struct DomainConfig {
  int d_id = 16;    // identity embedding dimension
  int d_slot = 24;  // slot: first d_id components identity-bearing, rest structure
  int d_bg = 16;    // background dimension
  int k_max = 3;    // maximum subjects per scene
  int d_cond = 32;  // condition embedding dimension

  double noise_sigma = 0.05;         // per-component slot/background noise
  double struct_jitter_sigma = 0.1;  // per-slot structure jitter
  double age_cos = 0.55;             // cosine preserved by the age map
  double encoder_leak = 0.15;        // off-core encoder perturbation scale
  double detect_threshold = 0.05;    // minimum slot norm the detector accepts

  std::uint64_t world_seed = 2024;  // seeds all frozen world structures

  int d_struct() const { return d_slot - d_id; }
  int latent_dim() const { return k_max * d_slot + d_bg; }

  nlohmann::json to_json() const;
  static DomainConfig from_json(const nlohmann::json& j);
};

struct IdentityRecord {
  int id = 0;
  Vec mu;  // unit norm, dimension d_id
};

// A synthetic multi-subject "image": k_max slot vectors plus a background,
// flattened as slots in index order followed by the background.
struct SceneSample {
  std::vector<Vec> slots;
  Vec background;
  int active_k = 0;

  Vec flatten(const DomainConfig& cfg) const;
  static SceneSample unflatten(const Vec& latent, int active_k,
                               const DomainConfig& cfg);
};

struct ConditionEmbedding {
  Vec c;
  Task task = Task::group;
};

struct DatasetManifest {
  Task task = Task::group;
  int count = 0;
  std::uint64_t seed = 0;
  DomainConfig dims;
  std::string file;  // JSONL data file
  int bank_size = 0;
  std::uint64_t bank_seed = 0;

  nlohmann::json to_json() const;
  static DatasetManifest from_json(const nlohmann::json& j);
};

struct SceneRecord {
  Vec scene;                     // flattened latent
  Vec condition;                 // d_cond
  std::vector<int> identity_ids; // sorted ascending
  int k = 0;
};

// Frozen seeded structures shared by rendering, encoding, and scoring:
// the identity mixing matrix, per-task structure bases, the age map, the
// background distribution, and the semantic projections.
class World {
 public:
  explicit World(const DomainConfig& cfg);

  const DomainConfig& config() const { return cfg_; }
  const Matrix& mixing() const { return mixing_; }          // d_id x d_id, orthogonal
  const Vec& structure_base(Task task) const;               // d_struct
  const Vec& background_mean() const { return bg_mean_; }

  // normalize(M mu) where M = c I + sqrt(1-c^2) J blends the identity map
  // with a seeded rotation generator; cos(mu, M mu) = c for every unit mu.
  Vec age_transform(const Vec& mu) const;

  // squared norm of the structure shift between the group and age tasks
  double structure_shift_sq() const { return structure_shift_sq_; }

  Vec identity_content(Task task, const Vec& mu) const;

  const Matrix& sem_proj_latent() const { return sem_proj_latent_; }
  const Matrix& sem_proj_cond() const { return sem_proj_cond_; }

 private:
  DomainConfig cfg_;
  Matrix mixing_;
  Matrix age_rotation_;  // skew-orthogonal generator J
  Vec struct_base_group_;
  Vec struct_base_age_;
  Vec bg_mean_;
  Matrix sem_proj_latent_;
  Matrix sem_proj_cond_;
  double structure_shift_sq_ = 0.0;
};

// n unit-norm identities with pairwise cosine similarity < 0.5.
std::vector<IdentityRecord> make_identity_bank(int n, std::uint64_t seed,
                                               const DomainConfig& cfg);

SceneSample render_scene(const std::vector<IdentityRecord>& identities,
                         Task task, std::uint64_t seed, const World& world);

Vec prompt_embedding(const std::vector<int>& identity_ids, Task task,
                     std::uint64_t seed, const DomainConfig& cfg);

DatasetManifest build_dataset(Task task, int n_scenes,
                              const std::vector<IdentityRecord>& bank,
                              std::uint64_t bank_seed, std::uint64_t seed,
                              const std::string& path, const World& world);

std::vector<SceneRecord> load_dataset(const DatasetManifest& manifest);
DatasetManifest load_manifest(const std::string& manifest_path);
void save_manifest(const DatasetManifest& manifest,
                   const std::string& manifest_path);

// Serializes a double with 17 significant digits (exact float64 round-trip).
std::string format_double(double v);

}  // namespace idglow

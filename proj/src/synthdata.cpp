#include "idglow/synthdata.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#include "idglow/errors.hpp"

namespace idglow {

namespace fs = std::filesystem;

const char* task_name(Task task) {
  return task == Task::group ? "group" : "age";
}

Task task_from_name(const std::string& name) {
  if (name == "group") return Task::group;
  if (name == "age") return Task::age;
  throw Error(ErrorKind::config, "synthdata: unknown task '" + name + "'");
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

nlohmann::json DomainConfig::to_json() const {
  nlohmann::json j;
  j["d_id"] = d_id;
  j["d_slot"] = d_slot;
  j["d_bg"] = d_bg;
  j["k_max"] = k_max;
  j["d_cond"] = d_cond;
  j["noise_sigma"] = noise_sigma;
  j["struct_jitter_sigma"] = struct_jitter_sigma;
  j["age_cos"] = age_cos;
  j["encoder_leak"] = encoder_leak;
  j["detect_threshold"] = detect_threshold;
  j["world_seed"] = world_seed;
  return j;
}

DomainConfig DomainConfig::from_json(const nlohmann::json& j) {
  DomainConfig cfg;
  cfg.d_id = j.value("d_id", cfg.d_id);
  cfg.d_slot = j.value("d_slot", cfg.d_slot);
  cfg.d_bg = j.value("d_bg", cfg.d_bg);
  cfg.k_max = j.value("k_max", cfg.k_max);
  cfg.d_cond = j.value("d_cond", cfg.d_cond);
  cfg.noise_sigma = j.value("noise_sigma", cfg.noise_sigma);
  cfg.struct_jitter_sigma = j.value("struct_jitter_sigma", cfg.struct_jitter_sigma);
  cfg.age_cos = j.value("age_cos", cfg.age_cos);
  cfg.encoder_leak = j.value("encoder_leak", cfg.encoder_leak);
  cfg.detect_threshold = j.value("detect_threshold", cfg.detect_threshold);
  cfg.world_seed = j.value("world_seed", cfg.world_seed);
  if (cfg.d_slot <= cfg.d_id || cfg.k_max < 2) {
    throw Error(ErrorKind::config, "synthdata: invalid domain dimensions");
  }
  return cfg;
}

Vec SceneSample::flatten(const DomainConfig& cfg) const {
  Vec z;
  z.reserve(cfg.latent_dim());
  for (const auto& s : slots) z.insert(z.end(), s.begin(), s.end());
  z.insert(z.end(), background.begin(), background.end());
  if (static_cast<int>(z.size()) != cfg.latent_dim()) {
    throw Error(ErrorKind::shape, "synthdata: flatten produced wrong latent size");
  }
  return z;
}

SceneSample SceneSample::unflatten(const Vec& latent, int active_k,
                                   const DomainConfig& cfg) {
  if (static_cast<int>(latent.size()) != cfg.latent_dim()) {
    throw Error(ErrorKind::shape, "synthdata: latent has wrong dimension");
  }
  SceneSample s;
  s.active_k = active_k;
  s.slots.resize(cfg.k_max);
  auto it = latent.begin();
  for (int j = 0; j < cfg.k_max; ++j) {
    s.slots[j].assign(it, it + cfg.d_slot);
    it += cfg.d_slot;
  }
  s.background.assign(it, it + cfg.d_bg);
  return s;
}

World::World(const DomainConfig& cfg) : cfg_(cfg) {
  const int d_id = cfg.d_id;
  const int d_struct = cfg.d_struct();

  {
    Rng rng(derive_seed(cfg.world_seed, "mixing"));
    mixing_ = random_orthogonal(d_id, rng);
  }
  {
    // J = Q blockdiag([[0,-1],[1,0]], ...) Q^T: orthogonal and skew, so
    // (c I + s J) is a rotation leaving cos(mu, M mu) = c for all unit mu.
    Rng rng(derive_seed(cfg.world_seed, "agemap"));
    if (d_id % 2 != 0) {
      throw Error(ErrorKind::config, "synthdata: d_id must be even for the age map");
    }
    Matrix q = random_orthogonal(d_id, rng);
    Matrix block(d_id, d_id);
    for (int p = 0; p < d_id / 2; ++p) {
      block.at(2 * p, 2 * p + 1) = -1.0;
      block.at(2 * p + 1, 2 * p) = 1.0;
    }
    age_rotation_ = Matrix(d_id, d_id);
    for (int r = 0; r < d_id; ++r) {
      for (int c = 0; c < d_id; ++c) {
        double s = 0.0;
        for (int a = 0; a < d_id; ++a) {
          for (int b = 0; b < d_id; ++b) {
            s += q.at(r, a) * block.at(a, b) * q.at(c, b);
          }
        }
        age_rotation_.at(r, c) = s;
      }
    }
  }
  {
    Rng rng(derive_seed(cfg.world_seed, "structure"));
    struct_base_group_ = normalized(rng.normal_vec(d_struct));
    Vec g = rng.normal_vec(d_struct);
    // shift orthogonal to the group base, unit norm: the age task moves the
    // structure statistics by a known magnitude of exactly 1
    double proj = dot(g, struct_base_group_);
    axpy(-proj, struct_base_group_, g);
    Vec delta = normalized(g);
    struct_base_age_ = struct_base_group_;
    axpy(1.0, delta, struct_base_age_);
    structure_shift_sq_ = sq_norm(delta);
  }
  {
    Rng rng(derive_seed(cfg.world_seed, "background"));
    bg_mean_ = rng.normal_vec(cfg.d_bg);
    for (auto& v : bg_mean_) v *= 0.5;
  }
  {
    Rng rng(derive_seed(cfg.world_seed, "semproj"));
    sem_proj_latent_ = random_matrix(16, cfg.latent_dim(),
                                     1.0 / std::sqrt(cfg.latent_dim()), rng);
    sem_proj_cond_ =
        random_matrix(16, cfg.d_cond, 1.0 / std::sqrt(cfg.d_cond), rng);
  }
}

const Vec& World::structure_base(Task task) const {
  return task == Task::group ? struct_base_group_ : struct_base_age_;
}

Vec World::age_transform(const Vec& mu) const {
  if (static_cast<int>(mu.size()) != cfg_.d_id) {
    throw Error(ErrorKind::dimension_mismatch, "synthdata: age_transform dimension");
  }
  const double c = cfg_.age_cos;
  const double s = std::sqrt(1.0 - c * c);
  Vec rotated = matvec(age_rotation_, mu);
  Vec out(mu.size());
  for (std::size_t i = 0; i < mu.size(); ++i) out[i] = c * mu[i] + s * rotated[i];
  return normalized(out);
}

Vec World::identity_content(Task task, const Vec& mu) const {
  return task == Task::group ? mu : age_transform(mu);
}

std::vector<IdentityRecord> make_identity_bank(int n, std::uint64_t seed,
                                               const DomainConfig& cfg) {
  if (n < 2) {
    throw Error(ErrorKind::arity, "synthdata: identity bank needs n >= 2");
  }
  constexpr int kMaxAttempts = 20000;
  Rng rng(derive_seed(seed, "identity-bank"));
  std::vector<IdentityRecord> bank;
  bank.reserve(n);
  for (int i = 0; i < n; ++i) {
    bool placed = false;
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
      Vec mu = normalized(rng.normal_vec(cfg.d_id));
      bool ok = true;
      for (const auto& other : bank) {
        if (dot(mu, other.mu) >= 0.5) {
          ok = false;
          break;
        }
      }
      if (ok) {
        bank.push_back({i, std::move(mu)});
        placed = true;
        break;
      }
    }
    if (!placed) {
      throw Error(ErrorKind::generation_failure,
                  "synthdata: could not satisfy identity separation for n=" +
                      std::to_string(n));
    }
  }
  return bank;
}

SceneSample render_scene(const std::vector<IdentityRecord>& identities,
                         Task task, std::uint64_t seed, const World& world) {
  const DomainConfig& cfg = world.config();
  const int k = static_cast<int>(identities.size());
  if (k < 2 || k > cfg.k_max) {
    throw Error(ErrorKind::arity,
                "synthdata: render_scene needs 2..=" + std::to_string(cfg.k_max) +
                    " identities, got " + std::to_string(k));
  }
  Rng rng(derive_seed(seed, "scene"));

  // slot j receives identity perm[j]; the permutation keeps matching nontrivial
  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  rng.shuffle(perm);

  SceneSample scene;
  scene.active_k = k;
  scene.slots.assign(cfg.k_max, Vec(cfg.d_slot, 0.0));
  const Vec& base = world.structure_base(task);
  for (int j = 0; j < k; ++j) {
    Vec content = world.identity_content(task, identities[perm[j]].mu);
    Vec id_part = matvec(world.mixing(), content);
    Vec& slot = scene.slots[j];
    for (int i = 0; i < cfg.d_id; ++i) slot[i] = id_part[i];
    for (int i = 0; i < cfg.d_struct(); ++i) {
      slot[cfg.d_id + i] = base[i] + cfg.struct_jitter_sigma * rng.normal();
    }
    for (int i = 0; i < cfg.d_slot; ++i) slot[i] += cfg.noise_sigma * rng.normal();
  }
  scene.background = world.background_mean();
  for (auto& v : scene.background) v += cfg.noise_sigma * rng.normal();
  return scene;
}

Vec prompt_embedding(const std::vector<int>& identity_ids, Task task,
                     std::uint64_t seed, const DomainConfig& cfg) {
  std::vector<int> ids = identity_ids;
  std::sort(ids.begin(), ids.end());
  std::uint64_t h = derive_seed(seed, "prompt-embedding");
  h = splitmix64(h ^ fnv1a64(task_name(task)));
  for (int id : ids) {
    h = splitmix64(h ^ (static_cast<std::uint64_t>(static_cast<std::uint32_t>(id)) +
                        0x9e3779b97f4a7c15ull));
  }
  Rng rng(h);
  return normalized(rng.normal_vec(cfg.d_cond));
}

nlohmann::json DatasetManifest::to_json() const {
  nlohmann::json j;
  j["task"] = task_name(task);
  j["count"] = count;
  j["seed"] = seed;
  j["dims"] = dims.to_json();
  j["file"] = fs::path(file).filename().string();
  j["bank_size"] = bank_size;
  j["bank_seed"] = bank_seed;
  return j;
}

DatasetManifest DatasetManifest::from_json(const nlohmann::json& j) {
  DatasetManifest m;
  m.task = task_from_name(j.at("task").get<std::string>());
  m.count = j.at("count").get<int>();
  m.seed = j.at("seed").get<std::uint64_t>();
  m.dims = DomainConfig::from_json(j.at("dims"));
  m.file = j.at("file").get<std::string>();
  m.bank_size = j.at("bank_size").get<int>();
  m.bank_seed = j.at("bank_seed").get<std::uint64_t>();
  return m;
}

void save_manifest(const DatasetManifest& manifest,
                   const std::string& manifest_path) {
  std::ofstream out(manifest_path, std::ios::binary);
  if (!out) {
    throw Error(ErrorKind::io, "synthdata: cannot write manifest " + manifest_path);
  }
  out << manifest.to_json().dump(2) << "\n";
}

DatasetManifest load_manifest(const std::string& manifest_path) {
  std::ifstream in(manifest_path, std::ios::binary);
  if (!in) {
    throw Error(ErrorKind::io, "synthdata: cannot read manifest " + manifest_path);
  }
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::format,
                "synthdata: bad manifest " + manifest_path + ": " + e.what());
  }
  DatasetManifest m = DatasetManifest::from_json(j);
  fs::path file(m.file);
  if (file.is_relative()) {
    m.file = (fs::path(manifest_path).parent_path() / file).string();
  }
  return m;
}

static void append_vec(std::string& line, const Vec& v) {
  line += '[';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) line += ',';
    line += format_double(v[i]);
  }
  line += ']';
}

DatasetManifest build_dataset(Task task, int n_scenes,
                              const std::vector<IdentityRecord>& bank,
                              std::uint64_t bank_seed, std::uint64_t seed,
                              const std::string& path, const World& world) {
  if (bank.empty()) {
    throw Error(ErrorKind::empty_input, "synthdata: empty identity bank");
  }
  if (n_scenes < 1) {
    throw Error(ErrorKind::config, "synthdata: n_scenes must be >= 1");
  }
  const DomainConfig& cfg = world.config();
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorKind::io, "synthdata: cannot write dataset " + path);
  }

  Rng rng(derive_seed(seed, "dataset"));
  const int n_bank = static_cast<int>(bank.size());
  for (int i = 0; i < n_scenes; ++i) {
    const int k = n_bank >= 3 ? 2 + static_cast<int>(rng.index(2)) : 2;
    std::vector<int> picks;
    while (static_cast<int>(picks.size()) < k) {
      int cand = static_cast<int>(rng.index(n_bank));
      if (std::find(picks.begin(), picks.end(), cand) == picks.end()) {
        picks.push_back(cand);
      }
    }
    std::sort(picks.begin(), picks.end());
    std::vector<IdentityRecord> chosen;
    std::vector<int> ids;
    for (int p : picks) {
      chosen.push_back(bank[p]);
      ids.push_back(bank[p].id);
    }
    SceneSample scene = render_scene(chosen, task, derive_seed(seed, "scene", i), world);
    Vec cond = prompt_embedding(ids, task, seed, cfg);

    std::string line = "{\"scene\":";
    append_vec(line, scene.flatten(cfg));
    line += ",\"condition\":";
    append_vec(line, cond);
    line += ",\"identity_ids\":[";
    for (std::size_t n = 0; n < ids.size(); ++n) {
      if (n) line += ',';
      line += std::to_string(ids[n]);
    }
    line += "],\"k\":" + std::to_string(k) + "}\n";
    out << line;
  }
  if (!out) {
    throw Error(ErrorKind::io, "synthdata: write failure on " + path);
  }
  out.close();

  DatasetManifest manifest;
  manifest.task = task;
  manifest.count = n_scenes;
  manifest.seed = seed;
  manifest.dims = cfg;
  manifest.file = path;
  manifest.bank_size = n_bank;
  manifest.bank_seed = bank_seed;
  save_manifest(manifest, path + ".manifest.json");
  return manifest;
}

std::vector<SceneRecord> load_dataset(const DatasetManifest& manifest) {
  std::ifstream in(manifest.file, std::ios::binary);
  if (!in) {
    throw Error(ErrorKind::io, "synthdata: cannot read dataset " + manifest.file);
  }
  std::vector<SceneRecord> records;
  records.reserve(manifest.count);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::format,
                  "synthdata: bad dataset line in " + manifest.file + ": " + e.what());
    }
    SceneRecord r;
    r.scene = j.at("scene").get<Vec>();
    r.condition = j.at("condition").get<Vec>();
    r.identity_ids = j.at("identity_ids").get<std::vector<int>>();
    r.k = j.at("k").get<int>();
    if (static_cast<int>(r.scene.size()) != manifest.dims.latent_dim() ||
        static_cast<int>(r.condition.size()) != manifest.dims.d_cond) {
      throw Error(ErrorKind::format, "synthdata: record dimensions do not match manifest");
    }
    records.push_back(std::move(r));
  }
  if (static_cast<int>(records.size()) != manifest.count) {
    throw Error(ErrorKind::format,
                "synthdata: record count mismatch in " + manifest.file);
  }
  return records;
}

}  // namespace idglow

#include "frcert/suite.hpp"

#include "frcert/native_io.hpp"
#include "frcert/sdpa.hpp"
#include "frcert/verifier.hpp"

#include <json.hpp>

#include <fstream>

namespace frcert {
namespace {

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

bool SuiteManifest::all_verified() const {
  for (const auto& e : entries)
    if (!e.verified || !e.reimport_verified) return false;
  return true;
}

std::string SuiteManifest::to_json() const {
  nlohmann::json j;
  j["generator"] = std::string("frcert ") + kGeneratorVersion;
  j["master_seed"] = master_seed;
  j["per_category"] = per_category;
  j["categories"] = suite_categories();
  j["instances"] = nlohmann::json::array();
  for (const auto& e : entries) {
    nlohmann::json x{{"stem", e.stem},     {"category", e.category},          {"seed", e.seed},
                     {"sdpa", e.stem + ".dat-s"}, {"certificate", e.stem + ".cert"}, {"verified", e.verified},
                     {"reimport_verified", e.reimport_verified}};
    if (!e.failure.empty()) x["failure"] = e.failure;
    j["instances"].push_back(x);
  }
  return j.dump(2) + "\n";
}

std::vector<std::string> suite_categories() {
  std::vector<std::string> out;
  for (const char* style : {"clean", "messy"})
    for (const char* kind : {"infeasible", "weak"})
      for (const char* m : {"m10", "m20"}) out.push_back(std::string(style) + "-" + kind + "-" + m);
  return out;
}

SuiteManifest run_suite(const std::filesystem::path& outdir, Index per_category, std::uint64_t master_seed) {
  if (per_category < 0) throw ParamError("count must be nonnegative");
  std::filesystem::create_directories(outdir);
  SuiteManifest manifest;
  manifest.master_seed = master_seed;
  manifest.per_category = per_category;
  const auto cats = suite_categories();
  std::uint64_t counter = 0;
  for (const auto& cat : cats) {
    const bool messy = cat.rfind("messy", 0) == 0;
    const bool weak = cat.find("-weak-") != std::string::npos;
    const bool m20 = cat.size() >= 3 && cat.compare(cat.size() - 3, 3, "m20") == 0;
    for (Index idx = 0; idx < per_category; ++idx) {
      SuiteEntry e;
      e.category = cat;
      e.seed = derive_seed(master_seed, counter++);
      char num[32];
      std::snprintf(num, sizeof num, "%03ld", static_cast<long>(idx));
      e.stem = cat + "-" + num;
      try {
        GenParams p = GenParams::preset(m20 ? "paper-m20" : "paper-m10");
        p.seed = e.seed;
        p.mess = messy;
        Generated g = weak ? gen_weak(p) : gen_infeasible(p);
        e.verified = verify_bundle(g.instance, g.bundle).proven();

        NativeDocument doc;
        doc.instance = g.instance;
        doc.bundle = g.bundle;
        const std::string sdpa = write_sdpa(export_sdpa(g.instance));
        write_file(outdir / (e.stem + ".dat-s"), sdpa);
        write_file(outdir / (e.stem + ".cert"), write_native(doc));

        DualInstance back = import_sdpa(read_file(outdir / (e.stem + ".dat-s")));
        e.reimport_verified = verify_bundle(back, g.bundle).proven();
        if (!e.verified) e.failure = "certificate rejected";
        else if (!e.reimport_verified) e.failure = "certificate rejected after SDPA round trip";
      } catch (const std::exception& ex) {
        e.failure = ex.what();
      }
      manifest.entries.push_back(std::move(e));
    }
  }
  write_file(outdir / "manifest.json", manifest.to_json());
  return manifest;
}

}  // namespace frcert

#include "rndop/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace rndop {

using nlohmann::json;
using nlohmann::ordered_json;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

ordered_json vec_to_json(const Vec3& v) { return ordered_json::array({v.x, v.y, v.z}); }

ordered_json anchors_to_json(const std::vector<Vec3>& pts) {
  ordered_json arr = ordered_json::array();
  for (const Vec3& p : pts) arr.push_back(vec_to_json(p));
  return arr;
}

}  // namespace

std::string placement_run_to_json(const PlacementRun& run) {
  ordered_json doc;
  doc["schema"] = "rndop.placement/1";
  doc["mode"] = mode_name(run.mode);
  doc["method"] = method_name(run.method);
  doc["seed"] = run.seed;
  doc["status"] = run_status_name(run.status);
  if (!run.message.empty()) doc["message"] = run.message;
  doc["initial_sq_rndop"] = run.initial_sq_rndop;
  doc["failed_anchors"] = run.failed_anchors;
  doc["initial_anchors"] = anchors_to_json(run.initial_gcs);
  doc["final_anchors"] = anchors_to_json(run.final_gcs);

  ordered_json iters = ordered_json::array();
  for (const IterationRecord& rec : run.iterations) {
    ordered_json it;
    it["k"] = rec.anchor_count;
    it["anchor_lcs"] = vec_to_json(rec.anchor_lcs);
    it["anchor_gcs"] = vec_to_json(rec.anchor_gcs);
    it["achieved_sq_rndop"] = rec.achieved_sq_rndop;
    it["lb_iter"] = rec.bounds.lower;
    it["ub_iter"] = rec.bounds.upper;
    if (!std::isnan(rec.lb_config_sq)) {
      it["lb_config_sq"] = rec.lb_config_sq;
      it["lb_universal_sq"] = rec.lb_universal_sq;
    }
    it["solver_cost"] = rec.solver_cost;
    it["solver_iterations"] = rec.solver_iterations;
    it["valid"] = rec.valid;
    it["perturbation_tries"] = rec.perturbation_tries;
    iters.push_back(it);
  }
  doc["iterations"] = iters;
  return doc.dump(2) + "\n";
}

std::string rndop_vs_k_csv(const PlacementRun& run) {
  std::string out = "k,achieved_sq_rndop,lb_iter,ub_iter,lb_config,lb_universal\n";
  for (const IterationRecord& rec : run.iterations) {
    out += std::to_string(rec.anchor_count);
    out += ',';
    out += format_double(rec.achieved_sq_rndop);
    out += ',';
    out += format_double(rec.bounds.lower);
    out += ',';
    out += format_double(rec.bounds.upper);
    out += ',';
    if (!std::isnan(rec.lb_config_sq)) out += format_double(rec.lb_config_sq);
    out += ',';
    if (!std::isnan(rec.lb_universal_sq)) out += format_double(rec.lb_universal_sq);
    out += '\n';
  }
  return out;
}

std::string campaign_to_json(const McCampaign& campaign, const std::vector<Method>& methods,
                             const std::vector<std::vector<TrialRecord>>& records) {
  ordered_json doc;
  doc["schema"] = "rndop.campaign/1";
  doc["mode"] = mode_name(campaign.mode);
  doc["master_seed"] = campaign.master_seed;
  doc["mc_init"] = campaign.mc_init;
  doc["mc_algo"] = campaign.mc_algo;
  doc["targets"] = campaign.targets;
  doc["coverage_radius"] = campaign.coverage_radius;
  doc["range_bias"] = campaign.range_model.bias;
  doc["range_sigma"] = campaign.range_model.sigma;
  doc["initial_anchors"] = campaign.initial_anchors;
  doc["additional_anchors"] = campaign.additional;

  ordered_json per_method = ordered_json::array();
  for (std::size_t mi = 0; mi < methods.size(); ++mi) {
    ordered_json m;
    m["method"] = method_name(methods[mi]);
    ordered_json trials = ordered_json::array();
    for (const TrialRecord& rec : records[mi]) {
      ordered_json t;
      t["trial"] = rec.trial;
      t["final_sq_rndop"] = rec.final_sq_rndop;
      t["t_exec_seconds"] = rec.t_exec_seconds;
      t["failed_anchors"] = rec.failed_anchors;
      t["status"] = run_status_name(rec.status);
      t["final_anchors"] = anchors_to_json(rec.final_gcs);
      trials.push_back(t);
    }
    m["trials"] = trials;
    per_method.push_back(m);
  }
  doc["methods"] = per_method;
  return doc.dump(2) + "\n";
}

std::string error_cdf_csv(const std::vector<CdfSeries>& series) {
  std::string out = "method,config_percentile,error_m,cdf\n";
  for (const CdfSeries& s : series) {
    const double n = static_cast<double>(s.errors.size());
    for (std::size_t i = 0; i < s.errors.size(); ++i) {
      out += s.method;
      out += ',';
      out += s.config_percentile;
      out += ',';
      out += format_double(s.errors[i]);
      out += ',';
      out += format_double(static_cast<double>(i + 1) / n);
      out += '\n';
    }
  }
  return out;
}

std::string timing_csv(const std::vector<TimingRow>& rows) {
  std::string out = "method,N_a,p10_s,p50_s,p90_s\n";
  for (const TimingRow& r : rows) {
    out += r.method;
    out += ',';
    out += std::to_string(r.n_additional);
    out += ',';
    out += format_double(r.p10_s);
    out += ',';
    out += format_double(r.p50_s);
    out += ',';
    out += format_double(r.p90_s);
    out += '\n';
  }
  return out;
}

std::string dop_field_csv(const std::vector<DopFieldRow>& rows) {
  std::string out = "theta,phi,rndop,dop_at_rt,lb,ub\n";
  for (const DopFieldRow& r : rows) {
    out += format_double(r.theta);
    out += ',';
    out += format_double(r.phi);
    out += ',';
    out += format_double(r.rndop);
    out += ',';
    out += format_double(r.dop_at_rt);
    out += ',';
    out += format_double(r.lb);
    out += ',';
    out += format_double(r.ub);
    out += '\n';
  }
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(Errc::invalid_config, "cannot open for writing: " + path);
  f << content;
  if (!f) throw Error(Errc::invalid_config, "short write: " + path);
}

std::vector<std::vector<double>> parse_numeric_csv(const std::string& text,
                                                   std::size_t skip_header) {
  std::vector<std::vector<double>> rows;
  std::istringstream stream(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(stream, line)) {
    if (line_no++ < skip_header) continue;
    if (line.empty()) continue;
    std::vector<double> row;
    std::size_t start = 0;
    while (start <= line.size()) {
      const std::size_t comma = line.find(',', start);
      const std::string cell =
          line.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
      if (cell.empty())
        row.push_back(std::numeric_limits<double>::quiet_NaN());
      else
        row.push_back(std::strtod(cell.c_str(), nullptr));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace rndop

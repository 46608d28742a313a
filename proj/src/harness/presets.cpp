#include "rlinfo/harness/presets.hpp"

namespace rlinfo {

namespace {

nlohmann::json deep_sea_base() {
  return nlohmann::json{
      {"env", {{"name", "deep_sea"}, {"size", 10}}},
      {"agent",
       {{"family", "enn"},
        {"planner", "ids"},
        {"ensemble_size", 20},
        {"prior_scale", 3.0},
        {"n_batch", 128},
        {"n_index", 20},
        {"min_replay", 4},
        {"sgd_steps", 4},
        {"learning_rate", 0.001},
        {"gamma", 0.99},
        {"n_ids", 40}}},
      {"run",
       {{"episodes", 10000}, {"stop_when_learned", true}, {"learned_threshold", 0.9}}}};
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"fig6_satisficing",  "fig10_deepsea",           "fig11_sparse",
          "fig12_informative_bandit", "fig13_informative_chain", "fig15_pessimism"};
}

std::string preset_description(const std::string& name) {
  if (name == "fig6_satisficing")
    return "satisficing-TS regret against plain TS on a 500-arm bandit, eps sweep "
           "(20 seeds, scaled down from 200 simulations at 5000 arms)";
  if (name == "fig10_deepsea")
    return "deep-sea learning-time scaling for ids/ts/egreedy, sizes 4-10 (10 seeds)";
  if (name == "fig11_sparse")
    return "sparse-bandit learning-time scaling, ids vs ts, 16-64 arms (20 seeds, "
           "scaled down from 100)";
  if (name == "fig12_informative_bandit")
    return "informative bandit: ts vs ids_q vs ids_gvf, 8-32 arms (20 seeds)";
  if (name == "fig13_informative_chain")
    return "informative chain: ts vs ids_q vs ids_gvf, tau 4-8 (20 seeds)";
  if (name == "fig15_pessimism")
    return "pessimism sweep on the informative chain at tau=8 (10 seeds)";
  throw ParseError("unknown preset '" + name + "'");
}

SweepSpec preset(const std::string& name) {
  nlohmann::json doc;
  if (name == "fig6_satisficing") {
    doc = {{"base",
            {{"env", {{"name", "many_armed_bandit"}, {"arms", 500}}},
             {"agent", {{"family", "exact"}, {"planner", "satisficing_ts"}}},
             {"run", {{"episodes", 1000}}}}},
           {"sweep",
            {{"agent.satisficing_eps", {0.0, 0.01, 0.02, 0.05, 0.1, 0.2, 0.5}}}},
           {"seeds", {0, 20}}};
  } else if (name == "fig10_deepsea") {
    doc = {{"base", deep_sea_base()},
           {"sweep",
            {{"env.size", {4, 6, 8, 10}}, {"agent.planner", {"ids", "ts", "egreedy"}}}},
           {"seeds", {0, 10}}};
  } else if (name == "fig11_sparse") {
    doc = {{"base",
            {{"env", {{"name", "sparse_bandit"}, {"arms", 64}}},
             {"agent",
              {{"family", "logit"}, {"planner", "ids"}, {"learning_rate", 0.1}, {"n_ids", 40}}},
             {"run",
              {{"episodes", 1500}, {"stop_when_learned", true}, {"learned_threshold", 0.9}}}}},
           {"sweep", {{"env.arms", {16, 32, 64}}, {"agent.planner", {"ids", "ts"}}}},
           {"seeds", {0, 20}}};
  } else if (name == "fig12_informative_bandit") {
    doc = {{"base",
            {{"env", {{"name", "informative_bandit"}, {"arms", 32}}},
             {"agent",
              {{"family", "logit"},
               {"planner", "ids"},
               {"target", "gvf"},
               {"learning_rate", 0.1},
               {"n_ids", 40}}},
             {"run",
              {{"episodes", 500}, {"stop_when_learned", true}, {"learned_threshold", 0.9}}}}},
           {"sweep",
            {{"env.arms", {8, 16, 32}},
             {"agent.planner", {"ids", "ts"}},
             {"agent.target", {"gvf", "optimal_action"}}}},
           {"seeds", {0, 20}}};
  } else if (name == "fig13_informative_chain") {
    doc = {{"base",
            {{"env", {{"name", "informative_chain"}, {"tau", 8}}},
             {"agent",
              {{"family", "logit"},
               {"planner", "ids"},
               {"target", "gvf"},
               {"eps_pess", 0.001},
               {"learning_rate", 0.1},
               {"n_ids", 40}}},
             {"run",
              {{"episodes", 500}, {"stop_when_learned", true}, {"learned_threshold", 0.9}}}}},
           {"sweep",
            {{"env.tau", {4, 6, 8}},
             {"agent.planner", {"ids", "ts"}},
             {"agent.target", {"gvf", "optimal_action"}}}},
           {"seeds", {0, 20}}};
  } else if (name == "fig15_pessimism") {
    doc = {{"base",
            {{"env", {{"name", "informative_chain"}, {"tau", 8}}},
             {"agent",
              {{"family", "logit"},
               {"planner", "ids"},
               {"target", "gvf"},
               {"learning_rate", 0.1},
               {"n_ids", 40}}},
             {"run",
              {{"episodes", 500}, {"stop_when_learned", true}, {"learned_threshold", 0.9}}}}},
           {"sweep",
            {{"agent.eps_pess", {0.0, 1e-6, 1e-5, 1e-4, 1e-3, 1e-2, 1e-1}}}},
           {"seeds", {0, 10}}};
  } else {
    throw ParseError("unknown preset '" + name + "'");
  }
  return SweepSpec::from_json(doc);
}

}  // namespace rlinfo

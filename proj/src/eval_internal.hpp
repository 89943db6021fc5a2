#pragma once

#include <map>

#include "spatlang/semantics.hpp"

namespace spatlang {

// Evaluation engine with per-scene description caching, shared by
// evaluate(), conceptualize() and interpret() so search re-evaluations
// do not recompute the qualitative pipeline.
class Evaluator {
 public:
  Evaluator(const ScenePair& pair, const AbstractionParams& params,
            const ColorPrototypes& prototypes);

  std::vector<Solution> run(const IrlProgram& program) const;

  const ScenePair& pair() const { return pair_; }

 private:
  struct Branch;

  bool run_branch(const IrlProgram& program, int scene_index, Branch& branch) const;
  void expand_solutions(const IrlProgram& program, const Branch& branch,
                        int scene_index, std::vector<Solution>& out) const;
  double color_distance(const Entity& entity, const std::string& color) const;

  const ScenePair& pair_;
  const AbstractionParams& params_;
  const ColorPrototypes& prototypes_;
  std::vector<EventAtom> atoms_[2];  // describe_scene per scene
};

}  // namespace spatlang

#ifndef PHONOILP_PHONOILP_HPP
#define PHONOILP_PHONOILP_HPP

#include "phonoilp/dataset.hpp"
#include "phonoilp/evaluation.hpp"
#include "phonoilp/examples_io.hpp"
#include "phonoilp/learner.hpp"
#include "phonoilp/modes.hpp"
#include "phonoilp/phonology.hpp"
#include "phonoilp/pipeline.hpp"
#include "phonoilp/prover.hpp"
#include "phonoilp/reduction.hpp"
#include "phonoilp/saturation.hpp"
#include "phonoilp/score.hpp"
#include "phonoilp/search_params.hpp"
#include "phonoilp/sonority.hpp"
#include "phonoilp/subsumption.hpp"
#include "phonoilp/symbol.hpp"
#include "phonoilp/syntax.hpp"
#include "phonoilp/term.hpp"

#endif  // PHONOILP_PHONOILP_HPP

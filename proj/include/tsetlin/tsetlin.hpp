#pragma once

/* Umbrella header for the interpretable fake-news classification engine:
 * a clause-based learning machine over set-of-words features, credibility
 * scoring of its fake calls, and rule-level explanations. */

#include "automaton.hpp"
#include "clause.hpp"
#include "config.hpp"
#include "credibility.hpp"
#include "data/corpus.hpp"
#include "data/split.hpp"
#include "data/synthetic.hpp"
#include "document.hpp"
#include "eval.hpp"
#include "explain.hpp"
#include "model.hpp"
#include "pipeline.hpp"
#include "rng.hpp"
#include "serialization.hpp"
#include "text/booleanize.hpp"
#include "text/cleaning.hpp"
#include "text/feature_select.hpp"
#include "text/stopwords.hpp"
#include "text/vocabulary.hpp"
#include "train.hpp"

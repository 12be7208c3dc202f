#ifndef ESOS_ESOS_HPP
#define ESOS_ESOS_HPP

#include "esos/embedder.hpp"
#include "esos/embedding.hpp"
#include "esos/enumerate.hpp"
#include "esos/errors.hpp"
#include "esos/graph.hpp"
#include "esos/graph_core.hpp"
#include "esos/harness.hpp"
#include "esos/lemma_engine.hpp"
#include "esos/path_surgery.hpp"
#include "esos/report.hpp"
#include "esos/spider.hpp"
#include "esos/vertex_set.hpp"

#endif  // ESOS_ESOS_HPP

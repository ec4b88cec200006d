#pragma once

#include "pdfam/bottleneck.hpp"
#include "pdfam/classify.hpp"
#include "pdfam/constructions.hpp"
#include "pdfam/delaunay.hpp"
#include "pdfam/error.hpp"
#include "pdfam/experiments.hpp"
#include "pdfam/filtration.hpp"
#include "pdfam/geometry.hpp"
#include "pdfam/io.hpp"
#include "pdfam/persistence.hpp"
#include "pdfam/random.hpp"
#include "pdfam/union_find.hpp"

#pragma once

#include "dtn/error.hpp"
#include "dtn/weight.hpp"
#include "dtn/model.hpp"
#include "dtn/graph.hpp"
#include "dtn/hypergraph.hpp"
#include "dtn/certificate.hpp"
#include "dtn/stn.hpp"
#include "dtn/t2dtp.hpp"
#include "dtn/twosat.hpp"
#include "dtn/rdtp.hpp"
#include "dtn/hytn.hpp"
#include "dtn/certify.hpp"
#include "dtn/oracle.hpp"
#include "dtn/gen.hpp"
#include "dtn/io.hpp"

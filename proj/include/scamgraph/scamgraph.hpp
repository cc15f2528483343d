#pragma once

// Everything at once. Individual headers can be included on their own.

#include "scamgraph/core/address.hpp"
#include "scamgraph/core/errors.hpp"
#include "scamgraph/core/keccak.hpp"
#include "scamgraph/core/wei.hpp"
#include "scamgraph/ledger/snapshot.hpp"
#include "scamgraph/ledger/types.hpp"
#include "scamgraph/ingest/client.hpp"
#include "scamgraph/ingest/dataset_io.hpp"
#include "scamgraph/ingest/decoder.hpp"
#include "scamgraph/synth/generator.hpp"
#include "scamgraph/synth/ledger_builder.hpp"
#include "scamgraph/rugpull/detector.hpp"
#include "scamgraph/patterns/funding.hpp"
#include "scamgraph/patterns/stars.hpp"
#include "scamgraph/patterns/chains.hpp"
#include "scamgraph/patterns/major_flow.hpp"
#include "scamgraph/patterns/overlap.hpp"
#include "scamgraph/cluster/builder.hpp"
#include "scamgraph/similarity/fingerprint.hpp"
#include "scamgraph/similarity/scoring.hpp"
#include "scamgraph/profit/profit.hpp"
#include "scamgraph/network/network.hpp"
#include "scamgraph/network/poisoning.hpp"
#include "scamgraph/report/pipeline.hpp"

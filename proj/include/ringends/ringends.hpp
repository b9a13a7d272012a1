#pragma once

// umbrella header

#include "ringends/amalgam.hpp"
#include "ringends/catalog.hpp"
#include "ringends/chartab.hpp"
#include "ringends/cyclotomic.hpp"
#include "ringends/dsl.hpp"
#include "ringends/ends.hpp"
#include "ringends/errors.hpp"
#include "ringends/fields.hpp"
#include "ringends/fp.hpp"
#include "ringends/group.hpp"
#include "ringends/group_algebra.hpp"
#include "ringends/hilbert.hpp"
#include "ringends/linalg.hpp"
#include "ringends/numtheory.hpp"
#include "ringends/rational.hpp"
#include "ringends/report.hpp"
#include "ringends/sha256.hpp"
#include "ringends/version.hpp"
#include "ringends/wedderburn.hpp"

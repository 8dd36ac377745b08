#pragma once

#include "orthoiks/geometry.hpp"
#include "orthoiks/quartic.hpp"
#include "orthoiks/ik.hpp"
#include "orthoiks/classify.hpp"
#include "orthoiks/workspace.hpp"
#include "orthoiks/atlas.hpp"
#include "orthoiks/export.hpp"
#include "orthoiks/json_io.hpp"

#pragma once

#define PASFLAB_VERSION "0.1.0"

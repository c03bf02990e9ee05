# Copyright 2026 The ldpmarl Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Lets ctest point the smoke tests at the module staged in the build tree."""

import os
import sys

_stage = os.environ.get("LDPMARL_STAGE_DIR")
if _stage:
    # An editable install hooks imports ahead of sys.path; drop its finder so
    # the freshly built module is the one under test.
    sys.meta_path[:] = [
        f for f in sys.meta_path
        if not type(f).__module__.startswith("_editable_skbc_")
    ]
    sys.path.insert(0, _stage)

"""End-to-end acceptance: one test per criterion, one printed line each.

Run `pytest tests/test_acceptance.py -v -s` to watch the lines appear;
the same checks back the `impbench selftest` verb.
"""

from __future__ import annotations

import pytest

from impbench.acceptance import CRITERIA


@pytest.mark.parametrize(
    "cid,module,title,func", CRITERIA, ids=[c[0] for c in CRITERIA]
)
def test_criterion(cid, module, title, func):
    ok, detail = func()
    line = f"{cid} [{module}] {title}: {'pass' if ok else 'FAIL'}"
    print(line)
    assert ok, f"{line}\n  {detail}"

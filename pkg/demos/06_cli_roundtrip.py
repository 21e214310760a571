"""
Driving the JSON interface from Python
======================================

The same requests the ``cpsplit`` command reads on stdin.
"""

import json

import numpy as np

from cpsplit.cli import encode, execute, parse_request

request = {
    "command": "decompose-cptp",
    "input": {
        "type": "gksl",
        "H": encode(0.5 * np.diag([1, -1])),
        "lindblads": [encode(np.array([[0, 1], [0, 0]]))],
    },
    "B": encode(np.eye(2)),
}
result = execute(parse_request(json.dumps(request)))
print("status:", result.status, " exit code:", result.exit_code)
print(json.dumps(result.to_dict()["payload"]["H"]))

check = {"command": "check", "input": {"type": "superop", "L": encode(np.eye(4)[[0, 2, 1, 3]])}}
r = execute(parse_request(check))
print("transpose check:", r.status, " conditional-CP min eigenvalue:", r.payload["cond_cp_min_eig"])

import numpy as np
import allensdk.core.json_utilities as aju

import stardil.json_utilities as ju


def test_dumps_is_canonical():
    payload = dict(witness=np.array([3, 1]), dilation=np.float64(1.5), n=np.int64(4), fallback=False)
    text = ju.dumps(payload)
    assert text == ju.dumps(dict(reversed(list(payload.items()))))
    assert text.index('"dilation"') < text.index('"fallback"') < text.index('"n"') < text.index('"witness"')


def test_write_then_read(tmpdir):
    path = str(tmpdir.join("out.json"))
    ju.write(path, dict(center=np.array([0.5, -1.]), seed=np.int64(7)))
    assert aju.read(path) == {"center": [0.5, -1.], "seed": 7}


def test_emit_to_stdout(capsys):
    ju.emit({"b": 1, "a": 2})
    assert capsys.readouterr().out == '{\n  "a": 2,\n  "b": 1\n}\n'

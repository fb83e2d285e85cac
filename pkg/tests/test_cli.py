import io
import json
import subprocess
import sys

from twistlab.cli import run_command
from twistlab.criteria import TwistCollection
from twistlab.euclid import Transcript
from twistlab.pingpong import FreenessCertificate


def run(*argv, stdin=None):
    code, out, err = run_command(list(argv), io.StringIO(stdin) if stdin is not None else None)
    return code, (json.loads(out) if out else None), err


def test_classify_examples():
    code, out, _ = run("classify", "--s", "1", "--curves", "[[1,0],[4,3],[1,6]]")
    assert code == 0 and out["tag"] == "Free" and out["rank"] == 3
    code, out, _ = run("classify", "--s", "1", "1,0", "7,3", "1,4")
    assert out["tag"] == "SL2Z"


def test_negative_pairs_and_stdin():
    code, out, _ = run("classify", "--s", "1", "1,0", "1,3", "-11,3")
    assert code == 0 and out["rank"] == 2
    doc = {"powers": [{"curve": [1, 0], "power": 2}, {"curve": [0, 1], "power": 2},
                      {"curve": [1, 1], "power": 2}]}
    code, out, _ = run("classify", stdin=json.dumps(doc))
    assert out["tag"] == "FreeTimesC2"


def test_invalid_input_exit_2():
    code, out, err = run("classify", "--s", "1", "--curves", "[[2,4]]")
    assert code == 2 and out is None and "NonPrimitive" in err
    assert run("classify", "--curves", "{bad")[0] == 2
    assert run("frobnicate")[0] == 2
    assert run("reduce", "1,0", "0,1", "1,1", "1,2")[0] == 2
    assert run("classify")[0] == 2


def test_budget_exit_3():
    assert run("order", "--s", "31")[0] == 3
    assert run("relations", "--s", "2", "--depth", "10", "--max-nodes", "50", "1,0", "0,1")[0] == 3


def test_ns_and_friends():
    code, out, _ = run("ns", "--s", "4")
    assert out["tag"] == "Free" and out["rank"] == 5 and len(out["curves"]) == 6
    assert run("order", "--s", "5")[1]["order"] == 120
    assert run("farey", "--s", "4")[1]["e"] == 12
    assert run("hset", "--config", "g2s1", "--vector", "3,4")[1]["member"] is True
    assert run("hset", "--config", "g1s2", "--vector", "-1,1")[1]["member"] is False


def test_procedure_and_pingpong():
    code, out, _ = run("procedure", "--max-steps", "8", "1,0", "1,3", "1,10", "3,17")
    assert out["verdict"] == "FreeCertified" and out["certificate"]["rank"] == 4
    code, out, _ = run("pingpong", "--s", "2", "1,0", "0,1", "1,1")
    assert out["tag"] == "NotApplicable" and out["violations"]
    code, out, _ = run("relations", "--s", "2", "--depth", "6", "1,0", "0,1", "1,1")
    assert code == 0 and len(out["relation"]) == 6


def test_round_trip_of_outputs():
    _, out, _ = run("reduce", "1,0", "4,3", "1,6")
    assert out["verified"] and Transcript.from_json(out["transcript"]).verify()
    _, out, _ = run("classify", "--s", "3", "1,0", "0,1", "1,1")
    coll = TwistCollection.from_json(out["certificate"]["collection"])
    from twistlab.pingpong import pingpong_certificate
    assert isinstance(pingpong_certificate(coll), FreenessCertificate)


def test_deterministic_bytes():
    args = ["procedure", "--max-steps", "2", "1,0", "0,1", "1,1", "2,1", "3,1", "--s", "4"]
    assert run_command(args) == run_command(args)


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "twistlab.cli", "classify", "--s", "1", "1,0", "1,3"],
                          capture_output=True, text=True, stdin=subprocess.DEVNULL)
    assert proc.returncode == 0 and json.loads(proc.stdout)["rank"] == 2
    env_run = subprocess.run(
        [sys.executable, "-m", "twistlab.cli", "procedure", "--s", "4", "1,0", "0,1", "1,1", "2,1", "3,1"],
        capture_output=True, text=True, stdin=subprocess.DEVNULL,
        env={**__import__("os").environ, "TWISTLAB_MAX_STEPS": "2"})
    out = json.loads(env_run.stdout)
    assert out["verdict"] == "Inconclusive" and out["steps"] == 2

from pyrefront.bench import format_report, run_benchmark


def test_rows_structure_and_median():
    rows = run_benchmark([24], repetitions=3, steps=3)
    assert len(rows) == 2
    for row in rows:
        timings = [float(v) for v in row["seconds_per_step_all"].split(";")]
        assert len(timings) == 3
        assert min(timings) <= row["seconds_per_step_median"] <= max(timings)
        assert row["cell_updates_per_s"] > 0.0
        assert row["cells"] == 24 * 24


def test_high_order_scheme_costs_more_per_step():
    rows = run_benchmark([48], repetitions=3, steps=4)
    cost = {row["scheme"]: row["seconds_per_step_median"] for row in rows}
    assert cost["weno5/ssprk3"] > cost["upwind1/euler"]


def test_workload_scales_with_cell_count():
    # doubling each axis quadruples the cells; per-step time should follow
    # within a generous margin. Measured on the low-order kernel: the wide
    # WENO stencil's temporaries cross the cache boundary between these
    # sizes and scale superlinearly, and tiny grids are overhead-bound.
    def measure():
        rows = run_benchmark([128, 256], repetitions=7, steps=3)
        # best-of-reps is robust against CPU throttling mid-suite; the
        # shipped report still quotes medians
        cheap = {row["nx"]: min(float(v) for v in
                                row["seconds_per_step_all"].split(";"))
                 for row in rows if row["scheme"] == "upwind1/euler"}
        return cheap[256] / cheap[128]

    ratio = measure()
    if not 2.8 <= ratio <= 5.2:
        ratio = measure()  # one retry: shared-machine timing noise
    assert 2.8 <= ratio <= 5.2, ratio


def test_format_report_lines():
    rows = run_benchmark([24], repetitions=2, steps=2)
    text = format_report(rows)
    assert "cell-updates/s" in text.splitlines()[0]
    assert len(text.splitlines()) == 2 + len(rows)

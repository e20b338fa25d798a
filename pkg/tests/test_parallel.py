from src.parallel import effective_workers, map_branches


def square(x):
    return x * x


def test_effective_workers(mocker):
    """Test the worker count is clamped to the machine and the branch count."""
    mocker.patch("src.parallel.cpu_count", return_value=4)
    assert effective_workers(8, 10) == 4
    assert effective_workers(8, 2) == 2
    assert effective_workers(3, 0) == 1


def test_map_branches_in_process():
    """Test one worker maps in order without a pool."""
    assert map_branches(square, range(5)) == [0, 1, 4, 9, 16]


def test_map_branches_skips_pool_for_one_worker(mocker):
    """Test no pool is started for a single worker."""
    pool = mocker.patch("src.parallel.Pool")
    map_branches(square, [1, 2], workers=1)
    pool.assert_not_called()


def test_map_branches_with_pool(mocker):
    """Test results keep branch order across worker processes."""
    mocker.patch("src.parallel.cpu_count", return_value=2)
    assert map_branches(square, range(6), workers=2) == [0, 1, 4, 9, 16, 25]

#!/usr/bin/env python
"""test_mockups.py - Testing for testing mockups (confused yet? :P)
"""
import os

import mock
import pytest

from reluinit.lib.mockups import environ_mockup, mockup_to_fixture, open_mockup


def test_fake_open():
    files = {
        'file1.ini': 'file 1 content',
        'file2.ini': 'file 2 content',
    }
    with open_mockup(files):
        for name, content in files.items():
            with open(name) as fd1:
                assert content == fd1.read()
                assert fd1.name == name
            assert open.call_args == mock.call(name)
        with pytest.raises(IOError) as err:
            open('file3')
        assert err.value.errno == 2
        with pytest.raises(IOError) as err:
            open('file1.ini', 'w')
        assert err.value.errno == 30
        assert open.call_count == len(files) + 2


def test_fake_open_raises_given_error():
    with open_mockup({'locked.ini': PermissionError(13, 'denied')}):
        with pytest.raises(PermissionError):
            open('locked.ini')


def test_environ_mockup():
    before = dict(os.environ)
    with environ_mockup({'RELUINIT_THREADS': '2'}):
        assert dict(os.environ) == {'RELUINIT_THREADS': '2'}
    assert dict(os.environ) == before


def some_mockup(a1, a2):
    """Dummy function that will be mocked up"""


fixture_to_test = mockup_to_fixture(
    mock.patch(__name__ + '.some_mockup', return_value='some_value')
)


def test_mockup_to_fixture(fixture_to_test):
    result = some_mockup('arg1', 'arg2')
    assert result == 'some_value'
    assert fixture_to_test.call_count == 1
    assert fixture_to_test.call_args == mock.call('arg1', 'arg2')


def test_mockup_to_fixture_not_there():
    result = some_mockup('arg1', 'arg2')
    assert result is None

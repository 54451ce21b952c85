#!/usr/bin/env python
"""mockups.py - Testing mockups
"""
import io
import os

import mock
import pytest


class CTXStringIO(io.StringIO):
    """StringIO that reports the name it was opened under"""
    def __init__(self, content, name):
        super(CTXStringIO, self).__init__(content)
        self.name = name


def open_mockup(file_dict, ns='builtins'):
    """Mockup the open builtin (only for file reads)

    :param Mapping file_dict: A mapping from file names to file content to
                              simulate for the opened file, or an exception to
                              raise when trying to open it. Any file being
                              opened which is not in this dict will raise a "No
                              such file" exception.
    :param str ns:            The namespace to patch the 'open' function in, by
                              default 'builtins'
    :rtype: mock.patcher
    :returns: A patcher object that patches the open function
    """
    def _open(name, mode='r', buffering=-1, *args, **kwargs):
        if any(flag in mode for flag in 'wax+'):
            raise IOError(30, "Read-only mockup file: '{0}'".format(name))
        content = file_dict.get(
            name,
            IOError(2, "No such file or directory: '{0}'".format(name))
        )
        if isinstance(content, BaseException):
            raise content
        return CTXStringIO(content, name)

    return mock.patch('.'.join((ns, 'open')), side_effect=_open)


def environ_mockup(values):
    """Mockup ``os.environ`` holding exactly the given variables"""
    return mock.patch.dict(os.environ, values, clear=True)


def mockup_to_fixture(mockup_patcher):
    """Convert a mock-sytle mockup to a pytest fixture

    :param object mockup_patcher: A context manager to patch and unpatch
                                  objects as needed by the mockup
    :rtype: Callable
    :returns: A pytest fixture function that will setup and return the mockup
              when called, and tear it down when the test ends
    """
    @pytest.fixture
    def fixture(request):
        def finalizer():
            mockup_patcher.__exit__(None, None, None)

        request.addfinalizer(finalizer)
        return mockup_patcher.__enter__()

    return fixture

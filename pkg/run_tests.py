import unittest


unittest.main('tests')
